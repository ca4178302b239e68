#include "octosimd/profiling/profiler.hpp"

#include <atomic>
#include <chrono>

namespace octosimd::profiling {

namespace {

std::size_t thread_slot() {
  static std::atomic<std::size_t> next{0};
  thread_local const std::size_t slot = next++;
  return slot;
}

}  // namespace

std::int64_t steady_clock_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

Profiler::Profiler() : Profiler(Clock(steady_clock_ns)) {}

Profiler::Profiler(Clock clock) : clock_(std::move(clock)) {
  for (auto& s : shards_) s = std::make_unique<Shard>();
}

Profiler::Shard& Profiler::local_shard() { return *shards_[thread_slot() % kShards]; }

void Profiler::add(std::string_view name, std::int64_t ns) {
  Shard& shard = local_shard();
  std::lock_guard lock(shard.mu);
  auto it = shard.regions.find(name);
  if (it == shard.regions.end()) it = shard.regions.emplace(std::string(name), Accumulator{}).first;
  ++it->second.count;
  it->second.total_ns += ns;
}

std::vector<ProfileRecord> Profiler::report() const {
  std::map<std::string, Accumulator, std::less<>> merged;
  for (const auto& shard : shards_) {
    std::lock_guard lock(shard->mu);
    for (const auto& [name, acc] : shard->regions) {
      auto& m = merged[name];
      m.count += acc.count;
      m.total_ns += acc.total_ns;
    }
  }
  std::vector<ProfileRecord> out;
  out.reserve(merged.size());
  for (const auto& [name, acc] : merged) out.push_back({name, acc.count, acc.total_ns});
  return out;
}

}  // namespace octosimd::profiling
