#pragma once

// Named-region wall-clock timing aggregated into per-name count/total.
// Each thread accumulates into its own shard; report() merges them.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace octosimd::profiling {

// Returns nanoseconds from an arbitrary fixed origin.
using Clock = std::function<std::int64_t()>;

std::int64_t steady_clock_ns();

struct ProfileRecord {
  std::string name;
  std::uint64_t count = 0;
  std::int64_t total_ns = 0;

  double mean_ns() const { return static_cast<double>(total_ns) / static_cast<double>(count); }
};

class Profiler {
 public:
  Profiler();
  explicit Profiler(Clock clock);

  Profiler(const Profiler&) = delete;
  Profiler& operator=(const Profiler&) = delete;

  class Region {
   public:
    Region(Profiler& p, std::string_view name) : p_(p), name_(name), start_(p.clock_()) {}
    ~Region() { p_.add(name_, p_.clock_() - start_); }
    Region(const Region&) = delete;
    Region& operator=(const Region&) = delete;

   private:
    Profiler& p_;
    std::string_view name_;
    std::int64_t start_;
  };

  // Times `work` under `name` and passes its result through. The region is
  // recorded even if `work` throws.
  template <class F>
  decltype(auto) timed(std::string_view name, F&& work) {
    Region region(*this, name);
    return std::forward<F>(work)();
  }

  void add(std::string_view name, std::int64_t ns);

  // Snapshot ordered by name.
  std::vector<ProfileRecord> report() const;

  std::int64_t now() const { return clock_(); }

 private:
  struct Accumulator {
    std::uint64_t count = 0;
    std::int64_t total_ns = 0;
  };
  struct Shard {
    mutable std::mutex mu;
    std::map<std::string, Accumulator, std::less<>> regions;
  };
  static constexpr std::size_t kShards = 64;

  Shard& local_shard();

  Clock clock_;
  std::array<std::unique_ptr<Shard>, kShards> shards_;
};

}  // namespace octosimd::profiling
