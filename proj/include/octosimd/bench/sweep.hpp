#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "octosimd/bench/csv.hpp"
#include "octosimd/bench/scenario.hpp"

namespace octosimd::bench {

struct SweepSpec {
  std::vector<std::size_t> threads;
  std::vector<std::string> backends;
};

// Parses "t1,t2,...xb1,b2,..." (the separator may also be U+00D7).
SweepSpec parse_sweep(std::string_view text);

// One run per (threads, backend) pair, threads outermost. Rows are appended
// to csv_path after each run and also returned. `base` supplies every other
// run option.
std::vector<BenchRecord> sweep(const ScenarioConfig& cfg, const SweepSpec& spec, const std::filesystem::path& csv_path,
                               const RunOptions& base = {});

}  // namespace octosimd::bench
