#pragma once

// Benchmark CSV rows. One row per timed region of a run; the "total" row
// carries the whole-run time.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "octosimd/bench/scenario.hpp"

namespace octosimd::bench {

inline constexpr std::string_view kCsvHeader =
    "scenario,backend,simd_width,threads,tasks_per_multipole,kernel,count,mean_ns,total_ns,computation_s";

struct BenchRecord {
  std::string scenario;
  std::string backend;
  std::size_t simd_width = 1;
  std::size_t threads = 1;
  std::size_t tasks_per_multipole = 1;
  std::string kernel;
  std::uint64_t count = 0;
  double mean_ns = 0.0;
  std::int64_t total_ns = 0;
  double computation_s = 0.0;

  bool operator==(const BenchRecord&) const = default;
};

// Label written to the backend column: "legacy" for the legacy hydro kernel,
// "scalar" when both solvers are forced scalar, otherwise the backend name.
std::string backend_label(const RunOptions& opts);
std::size_t backend_width(const RunOptions& opts);

std::vector<BenchRecord> make_records(const ScenarioConfig& cfg, const RunOptions& opts, const RunResult& result);

std::string format_row(const BenchRecord& r);
BenchRecord parse_row(std::string_view line);

// Appends rows, writing the header first if the file is missing or empty.
// Throws std::runtime_error if the file cannot be opened for writing.
void append_csv(const std::filesystem::path& path, const std::vector<BenchRecord>& rows);

// Throws std::runtime_error on a missing file or a header mismatch.
std::vector<BenchRecord> read_csv(const std::filesystem::path& path);

}  // namespace octosimd::bench
