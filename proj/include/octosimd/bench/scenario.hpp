#pragma once

// Scenario drivers. A timestep runs gravity_per_step gravity iterations
// (ghost exchange, then monopole + multipole on every leaf) followed by
// hydro_per_step hydro iterations (ghost exchange, reconstruct + flux on every
// leaf, a global wave-speed reduction to pick dt, then the update).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "octosimd/grid/octree.hpp"
#include "octosimd/kernels/config.hpp"
#include "octosimd/profiling/profiler.hpp"
#include "octosimd/runtime/pool.hpp"

namespace octosimd::bench {

enum class HydroKernel { simd, scalar, legacy };
enum class GravityKernel { simd, scalar };

HydroKernel parse_hydro_kernel(std::string_view name);
GravityKernel parse_gravity_kernel(std::string_view name);
std::string to_string(HydroKernel k);
std::string to_string(GravityKernel k);

inline constexpr std::string_view kRotatingStarProxy = "rotating-star-proxy";
inline constexpr std::string_view kBlast = "blast";

struct ScenarioConfig {
  std::string name = std::string(kRotatingStarProxy);
  int max_level = 3;
  int stop_step = 10;
  double theta = 0.34;
  int gravity_per_step = 6;
  int hydro_per_step = 3;
  bool disable_output = false;
  kernels::HydroConfig hydro{};
  int expansion_order = 1;

  // Defaults for a named scenario (blast runs no gravity).
  static ScenarioConfig named(std::string_view name);

  kernels::GravityConfig gravity() const { return {theta, 0.5, expansion_order}; }
  void validate() const;
};

struct RunOptions {
  std::string backend = "scalar";
  std::size_t threads = 1;
  std::size_t tasks_per_multipole = 1;
  HydroKernel hydro_kernel = HydroKernel::simd;
  GravityKernel gravity_kernel = GravityKernel::simd;
  // Injected clock for deterministic timing tests; real time otherwise.
  std::optional<profiling::Clock> clock;
};

struct ConservedTotals {
  double mass = 0.0;
  double momentum_x = 0.0;
  double momentum_y = 0.0;
  double momentum_z = 0.0;
  double energy = 0.0;
};

ConservedTotals conserved_totals(const grid::Octree& tree);

struct RunResult {
  std::vector<profiling::ProfileRecord> report;
  grid::Octree tree;
  double computation_s = 0.0;
  runtime::LaunchStats launch_stats;
  std::uint64_t kernel_launches = 0;
  ConservedTotals initial;
  ConservedTotals final;
};

grid::Octree init_scenario(const ScenarioConfig& cfg);

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts);

}  // namespace octosimd::bench
