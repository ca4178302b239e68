#pragma once

// One octree leaf: an 8x8x8 interior of cells surrounded by two ghost layers,
// stored as structure-of-arrays over the 12^3 extended cube with x fastest.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace octosimd::grid {

inline constexpr int kInterior = 8;
inline constexpr int kGhost = 2;
inline constexpr int kExtent = kInterior + 2 * kGhost;
inline constexpr std::size_t kInteriorCells = kInterior * kInterior * kInterior;
inline constexpr std::size_t kExtendedCells = kExtent * kExtent * kExtent;

enum class HydroVar : std::size_t { rho = 0, sx = 1, sy = 2, sz = 3, energy = 4 };
inline constexpr std::size_t kHydroVars = 5;

enum class FieldSet { hydro, gravity };

struct LeafCoord {
  int x = 0;
  int y = 0;
  int z = 0;
  friend constexpr bool operator==(const LeafCoord&, const LeafCoord&) = default;
};

// Potential and acceleration on the interior cells (compact 8^3 indexing).
struct GravityField {
  std::vector<double> phi = std::vector<double>(kInteriorCells, 0.0);
  std::vector<double> gx = std::vector<double>(kInteriorCells, 0.0);
  std::vector<double> gy = std::vector<double>(kInteriorCells, 0.0);
  std::vector<double> gz = std::vector<double>(kInteriorCells, 0.0);
};

class SubGrid {
 public:
  SubGrid(int level, LeafCoord coord);

  // i, j, k in [-kGhost, kInterior + kGhost).
  static constexpr std::size_t ext_index(int i, int j, int k) {
    return static_cast<std::size_t>((i + kGhost) + kExtent * ((j + kGhost) + kExtent * (k + kGhost)));
  }
  // i, j, k in [0, kInterior).
  static constexpr std::size_t interior_index(int i, int j, int k) {
    return static_cast<std::size_t>(i + kInterior * (j + kInterior * k));
  }
  static constexpr bool is_interior(int i, int j, int k) {
    return i >= 0 && i < kInterior && j >= 0 && j < kInterior && k >= 0 && k < kInterior;
  }

  int level() const { return level_; }
  LeafCoord coord() const { return coord_; }
  // Cell width; the domain is the unit cube.
  double dx() const { return dx_; }

  std::span<double> hydro(HydroVar v) { return hydro_[static_cast<std::size_t>(v)]; }
  std::span<const double> hydro(HydroVar v) const { return hydro_[static_cast<std::size_t>(v)]; }
  std::span<double> hydro(std::size_t v) { return hydro_[v]; }
  std::span<const double> hydro(std::size_t v) const { return hydro_[v]; }

  std::span<double> mass() { return mass_; }
  std::span<const double> mass() const { return mass_; }

  // Multipole (full-neighbourhood) and monopole (near-field) outputs.
  GravityField& gravity() { return gravity_; }
  const GravityField& gravity() const { return gravity_; }
  GravityField& near_gravity() { return near_gravity_; }
  const GravityField& near_gravity() const { return near_gravity_; }

  // Tracks whether the ghost layers of a field set match the neighbours.
  // Interior writes through the update path clear it.
  bool ghosts_filled(FieldSet set) const { return set == FieldSet::hydro ? hydro_ghosts_ : gravity_ghosts_; }
  void mark_ghosts_filled(FieldSet set, bool filled) {
    (set == FieldSet::hydro ? hydro_ghosts_ : gravity_ghosts_) = filled;
  }

  double interior_sum(HydroVar v) const;

 private:
  int level_;
  LeafCoord coord_;
  double dx_;
  std::array<std::vector<double>, kHydroVars> hydro_;
  std::vector<double> mass_;
  GravityField gravity_;
  GravityField near_gravity_;
  bool hydro_ghosts_ = false;
  bool gravity_ghosts_ = false;
};

}  // namespace octosimd::grid
