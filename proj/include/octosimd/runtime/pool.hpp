#pragma once

// Work-stealing worker pool. Each worker owns a deque: it pushes and pops
// its own work LIFO and steals FIFO from the others. Spawns from threads
// outside the pool land in a shared injection queue.

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <exception>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <type_traits>
#include <vector>

#include "octosimd/runtime/future.hpp"

namespace octosimd::runtime {

struct PoolConfig {
  std::size_t workers = 1;
};

// Counters for kernel launches (see launch_kernel): chunks pushed through the
// queues versus single-task launches executed directly by the caller.
struct LaunchStats {
  std::uint64_t spawned = 0;
  std::uint64_t inlined = 0;
};

class Task {
 public:
  Task() = default;
  template <class F>
  explicit Task(F f) : impl_(std::make_unique<Model<F>>(std::move(f))) {}

  void operator()() { impl_->run(); }
  explicit operator bool() const { return static_cast<bool>(impl_); }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual void run() = 0;
  };
  template <class F>
  struct Model final : Concept {
    explicit Model(F fn) : f(std::move(fn)) {}
    void run() override { f(); }
    F f;
  };
  std::unique_ptr<Concept> impl_;
};

class PoolShutDown : public std::runtime_error {
 public:
  PoolShutDown() : std::runtime_error("spawn on a pool that has been shut down") {}
};

class Pool {
 public:
  explicit Pool(PoolConfig config);
  explicit Pool(std::size_t workers) : Pool(PoolConfig{workers}) {}
  ~Pool();

  Pool(const Pool&) = delete;
  Pool& operator=(const Pool&) = delete;

  std::size_t worker_count() const { return threads_.size(); }

  // Runs `work` exactly once on some worker. Exceptions end up in the future.
  template <class F>
  auto spawn(F work) -> Future<std::invoke_result_t<F&>> {
    using R = std::invoke_result_t<F&>;
    auto state = std::make_shared<detail::SharedState<R>>();
    enqueue(Task([state, work = std::move(work)]() mutable {
      try {
        if constexpr (std::is_void_v<R>) {
          work();
          state->set_value(std::monostate{});
        } else {
          state->set_value(work());
        }
      } catch (...) {
        state->set_error(std::current_exception());
      }
    }));
    return Future<R>(state);
  }

  // Finishes queued work, joins the workers, and rejects further spawns.
  void shutdown();

  std::uint64_t tasks_spawned() const { return spawned_.load(); }
  std::uint64_t tasks_executed() const { return executed_.load(); }

  LaunchStats launch_stats() const { return {launch_spawned_.load(), launch_inlined_.load()}; }
  void record_launch_spawned(std::uint64_t n) { launch_spawned_ += n; }
  void record_launch_inlined() { ++launch_inlined_; }

  // Executes one queued task on the calling worker; false if the caller is
  // not a worker of this pool or nothing was queued.
  bool help_one();

 private:
  struct WorkerQueue {
    std::mutex mu;
    std::deque<Task> tasks;
  };

  void enqueue(Task task);
  bool try_pop(std::size_t self, Task& out);
  void worker_loop(std::size_t index);
  void run(Task& task);

  std::vector<std::unique_ptr<WorkerQueue>> queues_;
  std::deque<Task> injected_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::atomic<std::size_t> queued_{0};
  std::atomic<std::uint64_t> spawned_{0};
  std::atomic<std::uint64_t> executed_{0};
  std::atomic<std::uint64_t> launch_spawned_{0};
  std::atomic<std::uint64_t> launch_inlined_{0};
  bool stopping_ = false;
  std::vector<std::thread> threads_;
};

}  // namespace octosimd::runtime
