#include "octosimd/bench/scenario.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "octosimd/kernels/gravity.hpp"
#include "octosimd/kernels/hydro.hpp"
#include "octosimd/kernels/legacy_hydro.hpp"
#include "octosimd/runtime/launch.hpp"
#include "octosimd/simd/backend.hpp"

namespace octosimd::bench {

using grid::HydroVar;
using grid::LeafId;

HydroKernel parse_hydro_kernel(std::string_view name) {
  if (name == "simd") return HydroKernel::simd;
  if (name == "scalar") return HydroKernel::scalar;
  if (name == "legacy") return HydroKernel::legacy;
  throw std::invalid_argument("unknown hydro kernel '" + std::string(name) + "' (valid: simd, scalar, legacy)");
}

GravityKernel parse_gravity_kernel(std::string_view name) {
  if (name == "simd") return GravityKernel::simd;
  if (name == "scalar") return GravityKernel::scalar;
  throw std::invalid_argument("unknown gravity kernel '" + std::string(name) + "' (valid: simd, scalar)");
}

std::string to_string(HydroKernel k) {
  switch (k) {
    case HydroKernel::simd: return "simd";
    case HydroKernel::scalar: return "scalar";
    case HydroKernel::legacy: return "legacy";
  }
  return "?";
}

std::string to_string(GravityKernel k) { return k == GravityKernel::simd ? "simd" : "scalar"; }

ScenarioConfig ScenarioConfig::named(std::string_view name) {
  ScenarioConfig cfg;
  cfg.name = std::string(name);
  if (name == kBlast) {
    cfg.gravity_per_step = 0;
  } else if (name != kRotatingStarProxy) {
    throw std::invalid_argument("unknown scenario '" + std::string(name) + "' (valid: rotating-star-proxy, blast)");
  }
  return cfg;
}

void ScenarioConfig::validate() const {
  if (name != kBlast && name != kRotatingStarProxy) {
    throw std::invalid_argument("unknown scenario '" + name + "' (valid: rotating-star-proxy, blast)");
  }
  if (stop_step < 1) throw std::invalid_argument("stop_step must be at least 1");
  if (max_level < 0 || max_level > grid::kMaxLevel) {
    throw std::invalid_argument("max_level must be in [0, " + std::to_string(grid::kMaxLevel) + "]");
  }
  if (gravity_per_step < 0 || hydro_per_step < 0) throw std::invalid_argument("iteration counts must be >= 0");
  if (name == kBlast && gravity_per_step != 0) throw std::invalid_argument("the blast scenario runs no gravity");
  hydro.validate();
  if (gravity_per_step > 0) gravity().validate();
}

ConservedTotals conserved_totals(const grid::Octree& tree) {
  const double vol = tree.dx() * tree.dx() * tree.dx();
  return {tree.total(HydroVar::rho) * vol, tree.total(HydroVar::sx) * vol, tree.total(HydroVar::sy) * vol,
          tree.total(HydroVar::sz) * vol, tree.total(HydroVar::energy) * vol};
}

grid::Octree init_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  if (cfg.name == kBlast) {
    return grid::build_unigrid(cfg.max_level, [](const grid::CellSite& s) {
      const int lo = s.cells_per_axis / 2 - 1;
      auto central = [lo](int g) { return g == lo || g == lo + 1; };
      grid::HydroState st;
      st.rho = 1.0;
      st.energy = (central(s.gi) && central(s.gj) && central(s.gk)) ? 10.0 : 1e-3;
      return st;
    });
  }

  // Gaussian blob in rigid rotation about the z-axis through the centre,
  // with barotropic pressure p = K rho^gamma.
  const double gamma = cfg.hydro.gamma;
  return grid::build_unigrid(cfg.max_level, [gamma](const grid::CellSite& s) {
    constexpr double peak = 10.0;
    constexpr double background = 1e-2;
    constexpr double width = 1.0 / 8.0;
    constexpr double omega = 1.0;
    constexpr double K = 1.0;
    const double x = s.x - 0.5, y = s.y - 0.5, z = s.z - 0.5;
    const double r2 = x * x + y * y + z * z;
    grid::HydroState st;
    st.rho = background + (peak - background) * std::exp(-r2 / (2.0 * width * width));
    const double vx = -omega * y;
    const double vy = omega * x;
    st.sx = st.rho * vx;
    st.sy = st.rho * vy;
    st.sz = 0.0;
    const double p = K * std::pow(st.rho, gamma);
    st.energy = p / (gamma - 1.0) + 0.5 * st.rho * (vx * vx + vy * vy);
    return st;
  });
}

namespace {

struct Driver {
  const ScenarioConfig& cfg;
  const RunOptions& opts;
  const simd::Backend& hydro_backend;
  const simd::Backend& gravity_backend;
  grid::Octree& tree;
  profiling::Profiler& prof;
  runtime::Pool& pool;
  std::atomic<std::uint64_t> launches{0};

  template <class Fn>
  void for_all_leaves(Fn fn) {
    std::vector<runtime::Future<void>> fs;
    fs.reserve(tree.leaf_count());
    for (LeafId id : tree.leaf_order()) fs.push_back(pool.spawn([&fn, id] { fn(id); }));
    runtime::when_all(std::move(fs)).get();
  }

  void launch(const char* name, std::size_t cells, std::size_t n_tasks, runtime::ChunkKernel kernel) {
    ++launches;
    prof.timed(name, [&] { runtime::launch_kernel(pool, cells, n_tasks, std::move(kernel)).get(); });
  }

  void gravity_iteration() {
    const kernels::GravityConfig gcfg = cfg.gravity();
    for_all_leaves([&](LeafId id) { grid::update_masses(tree.leaf(id)); });
    for_all_leaves([&](LeafId id) { grid::exchange_ghosts(tree, id, grid::FieldSet::gravity); });
    for_all_leaves([&](LeafId id) {
      grid::SubGrid& sub = tree.leaf(id);
      const kernels::SourceNeighborhood sources = kernels::gather_sources(tree, id);
      launch("monopole", grid::kInteriorCells, 1, [&](std::size_t, runtime::ChunkRange r) {
        kernels::monopole(sub, sources, gcfg, gravity_backend, sub.near_gravity(), r.begin, r.end);
      });
      // Cluster aggregation is part of the timed multipole region.
      ++launches;
      prof.timed("multipole", [&] {
        const kernels::ClusterSet clusters = kernels::aggregate_clusters(sources, sub.dx());
        runtime::launch_kernel(pool, grid::kInteriorCells, opts.tasks_per_multipole,
                               [&](std::size_t, runtime::ChunkRange r) {
                                 kernels::multipole(sub, sources, clusters, gcfg, gravity_backend, sub.gravity(),
                                                    r.begin, r.end);
                               })
            .get();
      });
    });
  }

  void hydro_iteration(std::vector<kernels::FaceFluxes>& fluxes) {
    const kernels::HydroConfig& hcfg = cfg.hydro;
    for_all_leaves([&](LeafId id) { grid::exchange_ghosts(tree, id, grid::FieldSet::hydro); });
    for_all_leaves([&](LeafId id) {
      thread_local kernels::QuadratureField q;
      const grid::SubGrid& sub = tree.leaf(id);
      kernels::FaceFluxes& f = fluxes[id];
      const bool legacy = opts.hydro_kernel == HydroKernel::legacy;
      launch("reconstruct", kernels::kReconCells, 1, [&](std::size_t, runtime::ChunkRange r) {
        if (legacy) {
          kernels::legacy::reconstruct(sub, hcfg, q, r.begin, r.end);
        } else {
          kernels::reconstruct(sub, hcfg, hydro_backend, q, r.begin, r.end);
        }
      });
      launch("flux", grid::kInteriorCells, 1, [&](std::size_t, runtime::ChunkRange r) {
        f.max_speed = legacy ? kernels::legacy::flux(sub, q, hcfg, f, r.begin, r.end)
                             : kernels::flux(sub, q, hcfg, hydro_backend, f, r.begin, r.end);
      });
    });

    double smax = 0.0;
    for (LeafId id : tree.leaf_order()) smax = std::max(smax, fluxes[id].max_speed);
    const double dt = smax > 0.0 ? hcfg.cfl * tree.dx() / smax : 0.0;
    for_all_leaves([&](LeafId id) { kernels::hydro_update(tree.leaf(id), fluxes[id], dt, hcfg); });
  }

  void run() {
    std::vector<kernels::FaceFluxes> fluxes(tree.leaf_count());
    for (int step = 0; step < cfg.stop_step; ++step) {
      try {
        for (int g = 0; g < cfg.gravity_per_step; ++g) gravity_iteration();
        for (int h = 0; h < cfg.hydro_per_step; ++h) hydro_iteration(fluxes);
      } catch (const kernels::KernelError& e) {
        throw kernels::KernelError(std::string("step ") + std::to_string(step) + ": " +
                                       std::string(e.what()).substr(0, std::string(e.what()).find(" at leaf")),
                                   e.leaf(), e.cell().x, e.cell().y, e.cell().z);
      }
    }
  }
};

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  const simd::Backend& backend = simd::find_backend(opts.backend);
  if (opts.threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (opts.tasks_per_multipole < 1) throw std::invalid_argument("tasks_per_multipole must be at least 1");

  const simd::Backend& hydro_backend =
      opts.hydro_kernel == HydroKernel::simd ? backend : simd::scalar_backend();
  const simd::Backend& gravity_backend =
      opts.gravity_kernel == GravityKernel::simd ? backend : simd::scalar_backend();

  grid::Octree tree = init_scenario(cfg);
  const ConservedTotals initial = conserved_totals(tree);

  profiling::Profiler prof(opts.clock ? *opts.clock : profiling::Clock(profiling::steady_clock_ns));
  runtime::Pool pool(opts.threads);
  Driver driver{cfg, opts, hydro_backend, gravity_backend, tree, prof, pool};

  prof.timed("total", [&] { driver.run(); });
  pool.shutdown();

  RunResult result{prof.report(), std::move(tree), 0.0, pool.launch_stats(), driver.launches.load(), initial, {}};
  for (const auto& r : result.report) {
    if (r.name == "total") result.computation_s = static_cast<double>(r.total_ns) * 1e-9;
  }
  result.final = conserved_totals(result.tree);
  return result;
}

}  // namespace octosimd::bench
