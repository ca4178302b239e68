#include "octosimd/bench/sweep.hpp"

#include <charconv>
#include <stdexcept>

#include "octosimd/simd/backend.hpp"

namespace octosimd::bench {

namespace {

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    const auto item = s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (item.empty()) throw std::invalid_argument("empty item in sweep list '" + std::string(s) + "'");
    out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

SweepSpec parse_sweep(std::string_view text) {
  constexpr std::string_view times = "\xC3\x97";
  std::size_t sep = text.find(times);
  std::size_t sep_len = times.size();
  if (sep == std::string_view::npos) {
    sep = text.find('x');
    sep_len = 1;
  }
  if (sep == std::string_view::npos) {
    throw std::invalid_argument("sweep must look like 'threads x backends', e.g. '1,2,4xscalar,emulated4'");
  }

  SweepSpec spec;
  for (auto t : split_list(text.substr(0, sep))) {
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || end != t.data() + t.size() || v == 0) {
      throw std::invalid_argument("bad thread count '" + std::string(t) + "' in sweep");
    }
    spec.threads.push_back(v);
  }
  for (auto b : split_list(text.substr(sep + sep_len))) {
    spec.backends.push_back(simd::find_backend(b).name);
  }
  return spec;
}

std::vector<BenchRecord> sweep(const ScenarioConfig& cfg, const SweepSpec& spec, const std::filesystem::path& csv_path,
                               const RunOptions& base) {
  if (spec.threads.empty() || spec.backends.empty()) throw std::invalid_argument("sweep lists must be non-empty");
  cfg.validate();
  for (const auto& b : spec.backends) simd::find_backend(b);
  append_csv(csv_path, {});

  std::vector<BenchRecord> all;
  for (std::size_t t : spec.threads) {
    for (const auto& b : spec.backends) {
      RunOptions opts = base;
      opts.threads = t;
      opts.backend = b;
      const RunResult result = run_scenario(cfg, opts);
      auto rows = make_records(cfg, opts, result);
      append_csv(csv_path, rows);
      all.insert(all.end(), rows.begin(), rows.end());
    }
  }
  return all;
}

}  // namespace octosimd::bench
