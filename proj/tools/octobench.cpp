#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "octosimd/bench/csv.hpp"
#include "octosimd/bench/scenario.hpp"
#include "octosimd/bench/sweep.hpp"
#include "octosimd/simd/backend.hpp"

namespace ob = octosimd::bench;

namespace {

void print_report(const ob::ScenarioConfig& cfg, const ob::RunOptions& opts, const ob::RunResult& r) {
  std::printf("%s L=%d steps=%d backend=%s threads=%zu tasks/multipole=%zu\n", cfg.name.c_str(), cfg.max_level,
              cfg.stop_step, ob::backend_label(opts).c_str(), opts.threads, opts.tasks_per_multipole);
  std::printf("  %-14s %10s %14s %16s\n", "kernel", "count", "mean_ns", "total_ns");
  for (const auto& rec : r.report) {
    std::printf("  %-14s %10llu %14.1f %16lld\n", rec.name.c_str(), static_cast<unsigned long long>(rec.count),
                rec.mean_ns(), static_cast<long long>(rec.total_ns));
  }
  std::printf("  computation time %.6f s\n", r.computation_s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"octobench: run octosimd scenarios and record kernel timings"};

  std::string scenario{ob::kRotatingStarProxy};
  int max_level = 3;
  int stop_step = 10;
  double theta = 0.34;
  std::string backend = "scalar";
  std::size_t threads = 1;
  std::size_t tasks_per_multipole = 1;
  std::string hydro_kernel = "simd";
  std::string gravity_kernel = "simd";
  bool disable_output = false;
  std::string csv_path;
  std::string sweep_text;

  app.add_option("--scenario", scenario, "rotating-star-proxy or blast")
      ->check(CLI::IsMember({std::string(ob::kRotatingStarProxy), std::string(ob::kBlast)}))
      ->capture_default_str();
  app.add_option("--max-level", max_level, "unigrid refinement level")->capture_default_str();
  app.add_option("--stop-step", stop_step, "number of timesteps")->capture_default_str();
  app.add_option("--theta", theta, "gravity opening parameter")->capture_default_str();
  auto* backend_opt = app.add_option("--backend", backend, "SIMD backend: " + octosimd::simd::backend_names())
                          ->capture_default_str();
  auto* threads_opt = app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber)
                          ->capture_default_str();
  app.add_option("--tasks-per-multipole", tasks_per_multipole, "tasks per multipole launch")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--hydro-kernel", hydro_kernel, "simd, scalar or legacy")
      ->check(CLI::IsMember({"simd", "scalar", "legacy"}))
      ->capture_default_str();
  app.add_option("--gravity-kernel", gravity_kernel, "simd or scalar")
      ->check(CLI::IsMember({"simd", "scalar"}))
      ->capture_default_str();
  app.add_flag("--disable-output", disable_output, "do not print the timing summary");
  app.add_option("--csv", csv_path, "append timing rows to this CSV file");
  auto* sweep_opt = app.add_option("--sweep", sweep_text, "threads x backends, e.g. \"1,2,4xscalar,emulated4\"");
  sweep_opt->excludes(threads_opt)->excludes(backend_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    ob::ScenarioConfig cfg = ob::ScenarioConfig::named(scenario);
    cfg.max_level = max_level;
    cfg.stop_step = stop_step;
    cfg.theta = theta;
    cfg.disable_output = disable_output;
    cfg.validate();

    ob::RunOptions opts;
    opts.backend = backend;
    opts.threads = threads;
    opts.tasks_per_multipole = tasks_per_multipole;
    opts.hydro_kernel = ob::parse_hydro_kernel(hydro_kernel);
    opts.gravity_kernel = ob::parse_gravity_kernel(gravity_kernel);

    if (!sweep_text.empty()) {
      if (csv_path.empty()) throw std::invalid_argument("--sweep requires --csv");
      const ob::SweepSpec spec = ob::parse_sweep(sweep_text);
      const auto rows = ob::sweep(cfg, spec, csv_path, opts);
      if (!disable_output) {
        std::printf("%zu runs, %zu rows appended to %s\n", spec.threads.size() * spec.backends.size(), rows.size(),
                    csv_path.c_str());
      }
      return 0;
    }

    octosimd::simd::find_backend(opts.backend);
    const ob::RunResult result = ob::run_scenario(cfg, opts);
    if (!csv_path.empty()) ob::append_csv(csv_path, ob::make_records(cfg, opts, result));
    if (!disable_output) print_report(cfg, opts, result);
  } catch (const std::exception& e) {
    std::cerr << "octobench: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
