#pragma once

// Hydro kernels on one subgrid: minmod reconstruction of every conserved
// variable to the 26 lattice directions of each cell, and the Rusanov face
// flux integrated over each face with 3x3 Simpson weights.
//
// Reconstruction covers the interior plus a one-cell ring so that every
// interior face sees both of its neighbours' states; the ring reads the
// second ghost layer. Density and energy are floored; a reconstructed point
// whose pressure would not be positive takes the cell-average state instead.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "octosimd/grid/direction.hpp"
#include "octosimd/grid/subgrid.hpp"
#include "octosimd/kernels/config.hpp"
#include "octosimd/simd/backend.hpp"

namespace octosimd::kernels {

inline constexpr int kReconRing = 1;
inline constexpr int kReconExtent = grid::kInterior + 2 * kReconRing;
inline constexpr std::size_t kReconCells = kReconExtent * kReconExtent * kReconExtent;

class QuadratureField {
 public:
  QuadratureField() : values_(grid::kHydroVars * grid::kDirections * kReconCells, 0.0) {}

  // i, j, k in [-1, 9).
  static constexpr std::size_t cell_index(int i, int j, int k) {
    return static_cast<std::size_t>((i + kReconRing) + kReconExtent * ((j + kReconRing) + kReconExtent * (k + kReconRing)));
  }

  std::span<double> values(std::size_t var, std::size_t dir) {
    return {values_.data() + (var * grid::kDirections + dir) * kReconCells, kReconCells};
  }
  std::span<const double> values(std::size_t var, std::size_t dir) const {
    return {values_.data() + (var * grid::kDirections + dir) * kReconCells, kReconCells};
  }

  double at(std::size_t var, grid::Direction d, int i, int j, int k) const {
    return values(var, grid::direction_index(d))[cell_index(i, j, k)];
  }

  const std::vector<double>& raw() const { return values_; }

 private:
  std::vector<double> values_;
};

// Numerical fluxes on every interior face. Axis a has kInterior + 1 faces
// along a and kInterior along the other two; storage is x-fastest.
class FaceFluxes {
 public:
  FaceFluxes();

  static constexpr int faces_along(int axis, int dim) { return axis == dim ? grid::kInterior + 1 : grid::kInterior; }
  static constexpr std::size_t face_count(int axis) {
    return static_cast<std::size_t>(faces_along(axis, 0) * faces_along(axis, 1) * faces_along(axis, 2));
  }
  static constexpr std::size_t face_index(int axis, int i, int j, int k) {
    return static_cast<std::size_t>(i + faces_along(axis, 0) * (j + faces_along(axis, 1) * k));
  }

  std::span<double> values(int axis, std::size_t var) { return flux_[static_cast<std::size_t>(axis) * grid::kHydroVars + var]; }
  std::span<const double> values(int axis, std::size_t var) const {
    return flux_[static_cast<std::size_t>(axis) * grid::kHydroVars + var];
  }

  // Largest signal speed |v_n| + c seen at any quadrature point.
  double max_speed = 0.0;

 private:
  std::vector<std::vector<double>> flux_;
};

// Simpson weights for the 3x3 quadrature points of a face, indexed by the
// two tangential direction components (+1 offset); they sum to one.
double face_weight(int t1, int t2);

// Range forms operate on a contiguous slice of the flat cell index so that
// they can be chunked; the whole-grid forms cover everything.

// Cells are indexed over the (kReconExtent)^3 reconstruction region.
void reconstruct(const grid::SubGrid& sub, const HydroConfig& cfg, const simd::Backend& backend,
                 QuadratureField& out, std::size_t begin, std::size_t end);
QuadratureField reconstruct(const grid::SubGrid& sub, const HydroConfig& cfg, const simd::Backend& backend);

// Cells are indexed over the interior; each cell owns its low face on every
// axis, and cells on the high boundary also own the high face. Returns the
// largest signal speed found in the range.
double flux(const grid::SubGrid& sub, const QuadratureField& q, const HydroConfig& cfg,
            const simd::Backend& backend, FaceFluxes& out, std::size_t begin, std::size_t end);
FaceFluxes flux(const grid::SubGrid& sub, const QuadratureField& q, const HydroConfig& cfg,
                const simd::Backend& backend);

// Forward-Euler finite-volume update of the interior. Rejects a step that
// violates dt <= cfl * dx / max_speed, and fails with KernelError if the
// result has non-positive density or energy.
void hydro_update(grid::SubGrid& sub, const FaceFluxes& fluxes, double dt, const HydroConfig& cfg);

// Exact Euler flux of a single state along `axis`.
std::array<double, grid::kHydroVars> euler_flux(const std::array<double, grid::kHydroVars>& u, int axis, double gamma);

}  // namespace octosimd::kernels
