#include "octosimd/runtime/pool.hpp"

#include <chrono>

namespace octosimd::runtime {

namespace {

struct WorkerIdentity {
  Pool* pool = nullptr;
  std::size_t index = 0;
};

thread_local WorkerIdentity current_worker;

}  // namespace

namespace detail {

bool on_worker_thread() { return current_worker.pool != nullptr; }

bool help_one() { return current_worker.pool != nullptr && current_worker.pool->help_one(); }

}  // namespace detail

Pool::Pool(PoolConfig config) {
  if (config.workers < 1) throw std::invalid_argument("a pool needs at least one worker");
  queues_.reserve(config.workers);
  for (std::size_t i = 0; i < config.workers; ++i) queues_.push_back(std::make_unique<WorkerQueue>());
  threads_.reserve(config.workers);
  for (std::size_t i = 0; i < config.workers; ++i) threads_.emplace_back([this, i] { worker_loop(i); });
}

Pool::~Pool() { shutdown(); }

void Pool::shutdown() {
  {
    std::lock_guard lock(mu_);
    if (stopping_ && threads_.empty()) return;
    stopping_ = true;
  }
  cv_.notify_all();
  for (auto& t : threads_) {
    if (t.joinable()) t.join();
  }
  threads_.clear();
}

void Pool::enqueue(Task task) {
  const bool from_worker = current_worker.pool == this;
  {
    std::lock_guard lock(mu_);
    // Workers may keep spawning while the pool drains; outsiders may not.
    if (stopping_ && !from_worker) throw PoolShutDown();
  }
  ++spawned_;
  ++queued_;
  if (from_worker) {
    auto& q = *queues_[current_worker.index];
    std::lock_guard lock(q.mu);
    q.tasks.push_back(std::move(task));
  } else {
    std::lock_guard lock(mu_);
    injected_.push_back(std::move(task));
  }
  cv_.notify_one();
}

bool Pool::try_pop(std::size_t self, Task& out) {
  {
    auto& own = *queues_[self];
    std::lock_guard lock(own.mu);
    if (!own.tasks.empty()) {
      out = std::move(own.tasks.back());
      own.tasks.pop_back();
      --queued_;
      return true;
    }
  }
  {
    std::lock_guard lock(mu_);
    if (!injected_.empty()) {
      out = std::move(injected_.front());
      injected_.pop_front();
      --queued_;
      return true;
    }
  }
  const std::size_t n = queues_.size();
  for (std::size_t k = 1; k < n; ++k) {
    auto& victim = *queues_[(self + k) % n];
    std::lock_guard lock(victim.mu);
    if (!victim.tasks.empty()) {
      out = std::move(victim.tasks.front());
      victim.tasks.pop_front();
      --queued_;
      return true;
    }
  }
  return false;
}

void Pool::run(Task& task) {
  task();
  ++executed_;
}

bool Pool::help_one() {
  if (current_worker.pool != this) return false;
  Task task;
  if (!try_pop(current_worker.index, task)) return false;
  run(task);
  return true;
}

void Pool::worker_loop(std::size_t index) {
  current_worker = {this, index};
  for (;;) {
    Task task;
    if (try_pop(index, task)) {
      run(task);
      continue;
    }
    std::unique_lock lock(mu_);
    if (stopping_ && queued_ == 0) break;
    // Timed wait: a push into another worker's deque only notifies one
    // sleeper, so idle workers re-check periodically for stealable work.
    cv_.wait_for(lock, std::chrono::milliseconds(1), [&] { return queued_ > 0 || stopping_; });
  }
  current_worker = {};
}

}  // namespace octosimd::runtime
