#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "octosimd/grid/octree.hpp"
#include "octosimd/kernels/gravity.hpp"

namespace fixtures {

inline std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

inline bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (bits(a[i]) != bits(b[i])) return false;
  return true;
}

// Lane values for conformance checks: mostly finite, with a sprinkling of
// zeros of both signs, infinities, NaN, subnormals and huge magnitudes.
inline double any_double(std::mt19937_64& rng) {
  static const double specials[] = {0.0,
                                    -0.0,
                                    std::numeric_limits<double>::infinity(),
                                    -std::numeric_limits<double>::infinity(),
                                    std::numeric_limits<double>::quiet_NaN(),
                                    std::numeric_limits<double>::denorm_min(),
                                    -4.9e-320,
                                    1e308,
                                    -1e-300,
                                    1.0};
  std::uniform_int_distribution<int> pick(0, 99);
  const int p = pick(rng);
  if (p < 8) return specials[p % 10];
  if (p < 10) return specials[8 + p % 2];
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  return u(rng);
}

// Smooth-ish random but physical state in every cell, ghosts included.
inline void fill_random_hydro(octosimd::grid::SubGrid& sub, std::mt19937_64& rng, double gamma = 1.4) {
  using octosimd::grid::HydroVar;
  std::uniform_real_distribution<double> rho_d(0.5, 2.0), v_d(-1.0, 1.0), p_d(0.5, 2.0);
  for (std::size_t c = 0; c < octosimd::grid::kExtendedCells; ++c) {
    const double rho = rho_d(rng), vx = v_d(rng), vy = v_d(rng), vz = v_d(rng), p = p_d(rng);
    sub.hydro(HydroVar::rho)[c] = rho;
    sub.hydro(HydroVar::sx)[c] = rho * vx;
    sub.hydro(HydroVar::sy)[c] = rho * vy;
    sub.hydro(HydroVar::sz)[c] = rho * vz;
    sub.hydro(HydroVar::energy)[c] = p / (gamma - 1.0) + 0.5 * rho * (vx * vx + vy * vy + vz * vz);
  }
  sub.mark_ghosts_filled(octosimd::grid::FieldSet::hydro, true);
}

inline octosimd::grid::SubGrid random_hydro_subgrid(std::mt19937_64& rng, int level = 1) {
  octosimd::grid::SubGrid sub(level, {0, 0, 0});
  fill_random_hydro(sub, rng);
  return sub;
}

inline octosimd::kernels::SourceNeighborhood random_sources(std::mt19937_64& rng, double dx) {
  std::uniform_real_distribution<double> rho(0.1, 10.0);
  octosimd::kernels::SourceNeighborhood s;
  const double vol = dx * dx * dx;
  for (auto& m : s.mass) m = rho(rng) * vol;
  return s;
}

// Potential and field from every other source cell in the neighbourhood,
// accumulated in long double.
struct DirectField {
  std::vector<long double> phi, gx, gy, gz;
};

inline DirectField direct_sum(const octosimd::kernels::SourceNeighborhood& src, double dx, double eps,
                              double radius2 = std::numeric_limits<double>::infinity()) {
  using namespace octosimd;
  constexpr int n = kernels::kNeighborhood;
  constexpr int lo = grid::kInterior;
  DirectField f;
  f.phi.assign(grid::kInteriorCells, 0.0L);
  f.gx = f.gy = f.gz = f.phi;
  for (int k = 0; k < grid::kInterior; ++k)
    for (int j = 0; j < grid::kInterior; ++j)
      for (int i = 0; i < grid::kInterior; ++i) {
        const std::size_t t = grid::SubGrid::interior_index(i, j, k);
        for (int sz = 0; sz < n; ++sz)
          for (int sy = 0; sy < n; ++sy)
            for (int sx = 0; sx < n; ++sx) {
              const long double ox = sx - (lo + i), oy = sy - (lo + j), oz = sz - (lo + k);
              const long double r2 = ox * ox + oy * oy + oz * oz;
              if (r2 == 0.0L || r2 > radius2) continue;
              const long double m = src.mass[kernels::SourceNeighborhood::index(sx, sy, sz)];
              const long double r = dx * std::sqrt(r2 + static_cast<long double>(eps) * eps);
              f.phi[t] -= m / r;
              f.gx[t] += m * ox * dx / (r * r * r);
              f.gy[t] += m * oy * dx / (r * r * r);
              f.gz[t] += m * oz * dx / (r * r * r);
            }
      }
  return f;
}

inline double max_abs_error(const std::vector<double>& got, const std::vector<long double>& want) {
  long double e = 0.0L;
  for (std::size_t i = 0; i < got.size(); ++i) e = std::max(e, std::fabs(static_cast<long double>(got[i]) - want[i]));
  return static_cast<double>(e);
}

inline bool same_fields(const octosimd::grid::Octree& a, const octosimd::grid::Octree& b) {
  using namespace octosimd::grid;
  if (a.leaf_count() != b.leaf_count()) return false;
  for (LeafId id = 0; id < a.leaf_count(); ++id) {
    for (std::size_t v = 0; v < kHydroVars; ++v) {
      const auto x = a.leaf(id).hydro(v), y = b.leaf(id).hydro(v);
      for (int k = 0; k < kInterior; ++k)
        for (int j = 0; j < kInterior; ++j)
          for (int i = 0; i < kInterior; ++i) {
            const std::size_t c = SubGrid::ext_index(i, j, k);
            if (bits(x[c]) != bits(y[c])) return false;
          }
    }
    const GravityField* fa[] = {&a.leaf(id).gravity(), &a.leaf(id).near_gravity()};
    const GravityField* fb[] = {&b.leaf(id).gravity(), &b.leaf(id).near_gravity()};
    for (int g = 0; g < 2; ++g) {
      if (!same_bits(fa[g]->phi, fb[g]->phi) || !same_bits(fa[g]->gx, fb[g]->gx) ||
          !same_bits(fa[g]->gy, fb[g]->gy) || !same_bits(fa[g]->gz, fb[g]->gz))
        return false;
    }
  }
  return true;
}

}  // namespace fixtures
