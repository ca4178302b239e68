#include "octosimd/runtime/launch.hpp"

#include <stdexcept>
#include <vector>

namespace octosimd::runtime {

ChunkRange chunk_range(std::size_t cells, std::size_t count, std::size_t index) {
  return {index * cells / count, (index + 1) * cells / count};
}

Future<void> launch_kernel(Pool& pool, std::size_t cells, std::size_t n_tasks, ChunkKernel kernel) {
  if (n_tasks < 1) throw std::invalid_argument("n_tasks must be at least 1");

  if (n_tasks == 1) {
    pool.record_launch_inlined();
    try {
      kernel(0, {0, cells});
    } catch (...) {
      return make_failed_future<void>(std::current_exception());
    }
    return make_ready_future();
  }

  auto shared = std::make_shared<ChunkKernel>(std::move(kernel));
  std::vector<Future<void>> chunks;
  chunks.reserve(n_tasks);
  for (std::size_t i = 0; i < n_tasks; ++i) {
    const ChunkRange r = chunk_range(cells, n_tasks, i);
    chunks.push_back(pool.spawn([shared, i, r] { (*shared)(i, r); }));
  }
  pool.record_launch_spawned(n_tasks);
  return when_all(std::move(chunks));
}

}  // namespace octosimd::runtime
