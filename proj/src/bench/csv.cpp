#include "octosimd/bench/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "octosimd/simd/backend.hpp"

namespace octosimd::bench {

namespace {

template <class T>
std::string to_text(T v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

template <class T>
T from_text(std::string_view s, std::string_view column) {
  T v{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw std::runtime_error("bad value '" + std::string(s) + "' in column " + std::string(column));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool uses_backend(const RunOptions& opts) {
  return opts.hydro_kernel == HydroKernel::simd || opts.gravity_kernel == GravityKernel::simd;
}

}  // namespace

std::string backend_label(const RunOptions& opts) {
  if (opts.hydro_kernel == HydroKernel::legacy) return "legacy";
  if (!uses_backend(opts)) return "scalar";
  return simd::find_backend(opts.backend).name;
}

std::size_t backend_width(const RunOptions& opts) {
  if (opts.hydro_kernel == HydroKernel::legacy || !uses_backend(opts)) return 1;
  return simd::find_backend(opts.backend).width;
}

std::vector<BenchRecord> make_records(const ScenarioConfig& cfg, const RunOptions& opts, const RunResult& result) {
  std::vector<BenchRecord> rows;
  rows.reserve(result.report.size());
  for (const auto& r : result.report) {
    BenchRecord b;
    b.scenario = cfg.name;
    b.backend = backend_label(opts);
    b.simd_width = backend_width(opts);
    b.threads = opts.threads;
    b.tasks_per_multipole = opts.tasks_per_multipole;
    b.kernel = r.name;
    b.count = r.count;
    b.mean_ns = r.mean_ns();
    b.total_ns = r.total_ns;
    b.computation_s = result.computation_s;
    rows.push_back(std::move(b));
  }
  return rows;
}

std::string format_row(const BenchRecord& r) {
  std::string s;
  s += r.scenario;
  s += ',' + r.backend;
  s += ',' + to_text(r.simd_width);
  s += ',' + to_text(r.threads);
  s += ',' + to_text(r.tasks_per_multipole);
  s += ',' + r.kernel;
  s += ',' + to_text(r.count);
  s += ',' + to_text(r.mean_ns);
  s += ',' + to_text(r.total_ns);
  s += ',' + to_text(r.computation_s);
  return s;
}

BenchRecord parse_row(std::string_view line) {
  const auto f = split(line);
  if (f.size() != 10) {
    throw std::runtime_error("expected 10 columns, got " + std::to_string(f.size()) + ": " + std::string(line));
  }
  BenchRecord r;
  r.scenario = std::string(f[0]);
  r.backend = std::string(f[1]);
  r.simd_width = from_text<std::size_t>(f[2], "simd_width");
  r.threads = from_text<std::size_t>(f[3], "threads");
  r.tasks_per_multipole = from_text<std::size_t>(f[4], "tasks_per_multipole");
  r.kernel = std::string(f[5]);
  r.count = from_text<std::uint64_t>(f[6], "count");
  r.mean_ns = from_text<double>(f[7], "mean_ns");
  r.total_ns = from_text<std::int64_t>(f[8], "total_ns");
  r.computation_s = from_text<double>(f[9], "computation_s");
  return r;
}

void append_csv(const std::filesystem::path& path, const std::vector<BenchRecord>& rows) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0 || ec;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  if (fresh) out << kCsvHeader << '\n';
  for (const auto& r : rows) out << format_row(r) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::vector<BenchRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("'" + path.string() + "' does not start with the benchmark CSV header");
  }
  std::vector<BenchRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(parse_row(line));
  }
  return rows;
}

}  // namespace octosimd::bench
