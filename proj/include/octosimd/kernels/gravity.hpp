#pragma once

// Gravity kernels on one target leaf, fed by the masses of the 3x3x3 block of
// leaves around it.
//
// monopole: softened direct sum over source cells within dx/theta of each
//   target cell (self excluded).
// multipole: the whole 24^3 neighbourhood, grouped into 2x2x2 clusters.
//   Clusters whose centre is farther than dx/theta from the target cell
//   contribute a monopole (+ dipole for order 1) expansion about their
//   geometric centre; nearer clusters are summed cell by cell.
//
// Both kernels put targets in SIMD lanes along x and walk sources in a fixed
// order, so each lane accumulates exactly like the scalar backend does.

#include <cstddef>
#include <vector>

#include "octosimd/grid/octree.hpp"
#include "octosimd/kernels/config.hpp"
#include "octosimd/runtime/launch.hpp"
#include "octosimd/simd/backend.hpp"

namespace octosimd::kernels {

inline constexpr int kNeighborhood = 3 * grid::kInterior;
inline constexpr std::size_t kNeighborhoodCells = kNeighborhood * kNeighborhood * kNeighborhood;
inline constexpr int kClusterExtent = kNeighborhood / 2;
inline constexpr std::size_t kClusterCount = kClusterExtent * kClusterExtent * kClusterExtent;

// Masses of the target leaf and its 26 periodic neighbours; the target's
// interior occupies [8, 16)^3.
struct SourceNeighborhood {
  std::vector<double> mass = std::vector<double>(kNeighborhoodCells, 0.0);

  static constexpr std::size_t index(int i, int j, int k) {
    return static_cast<std::size_t>(i + kNeighborhood * (j + kNeighborhood * k));
  }
};

SourceNeighborhood gather_sources(const grid::Octree& tree, grid::LeafId target);

// Per-cluster total mass, and dipole moment about the cluster centre in
// physical units. Cluster (I,J,K) covers neighbourhood cells [2I, 2I+2)
// and is centred at 2I+1 in cell units.
struct ClusterSet {
  std::vector<double> mass = std::vector<double>(kClusterCount, 0.0);
  std::vector<double> dipole_x = std::vector<double>(kClusterCount, 0.0);
  std::vector<double> dipole_y = std::vector<double>(kClusterCount, 0.0);
  std::vector<double> dipole_z = std::vector<double>(kClusterCount, 0.0);

  static constexpr std::size_t index(int i, int j, int k) {
    return static_cast<std::size_t>(i + kClusterExtent * (j + kClusterExtent * k));
  }
};

ClusterSet aggregate_clusters(const SourceNeighborhood& sources, double dx);

// Squared interaction radius (dx/theta)^2 in cell units, and the largest
// per-axis cell offset that can fall inside it.
double interaction_radius2(const GravityConfig& cfg);
int interaction_reach(const GravityConfig& cfg);

// Range forms cover interior cells [begin, end) of the compact 8^3 index.
void monopole(const grid::SubGrid& target, const SourceNeighborhood& sources, const GravityConfig& cfg,
              const simd::Backend& backend, grid::GravityField& out, std::size_t begin, std::size_t end);
void multipole(const grid::SubGrid& target, const SourceNeighborhood& sources, const ClusterSet& clusters,
               const GravityConfig& cfg, const simd::Backend& backend, grid::GravityField& out, std::size_t begin,
               std::size_t end);

grid::GravityField monopole_kernel(const grid::SubGrid& target, const SourceNeighborhood& sources,
                                   const GravityConfig& cfg, const simd::Backend& backend);

// Splits the target cells into n_tasks contiguous chunks on `pool` and waits
// for them. Output is bitwise independent of n_tasks.
grid::GravityField multipole_kernel(const grid::SubGrid& target, const SourceNeighborhood& sources,
                                    const GravityConfig& cfg, const simd::Backend& backend, runtime::Pool& pool,
                                    std::size_t n_tasks);

}  // namespace octosimd::kernels
