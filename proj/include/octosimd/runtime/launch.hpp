#pragma once

// Splits a kernel's cell range into contiguous chunks and runs them as tasks.
// A launch that forms a single task runs synchronously on the caller instead
// of going through a queue, keeping the caller's cache hot.

#include <cstddef>
#include <functional>
#include <utility>

#include "octosimd/runtime/future.hpp"
#include "octosimd/runtime/pool.hpp"

namespace octosimd::runtime {

struct ChunkRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  friend bool operator==(const ChunkRange&, const ChunkRange&) = default;
};

// Chunk `index` of `count` near-equal contiguous pieces of [0, cells).
ChunkRange chunk_range(std::size_t cells, std::size_t count, std::size_t index);

using ChunkKernel = std::function<void(std::size_t chunk, ChunkRange range)>;

// Throws std::invalid_argument if n_tasks < 1. With n_tasks == 1 the kernel
// has already run when this returns (errors land in the returned future).
Future<void> launch_kernel(Pool& pool, std::size_t cells, std::size_t n_tasks, ChunkKernel kernel);

}  // namespace octosimd::runtime
