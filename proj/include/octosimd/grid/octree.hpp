#pragma once

// Fully refined (unigrid) octree of depth L over the periodic unit cube.
// Leaves are stored in Morton order; a leaf id is its Morton code.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "octosimd/grid/direction.hpp"
#include "octosimd/grid/subgrid.hpp"

namespace octosimd::grid {

using LeafId = std::size_t;

inline constexpr int kMaxLevel = 5;

struct HydroState {
  double rho = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;
  double energy = 0.0;
};

// Location of one interior cell handed to a scenario initializer.
struct CellSite {
  int gi = 0;  // global cell index along x, in [0, cells_per_axis)
  int gj = 0;
  int gk = 0;
  double x = 0.0;  // cell centre
  double y = 0.0;
  double z = 0.0;
  double dx = 0.0;
  int cells_per_axis = 0;
};

using CellInitializer = std::function<HydroState(const CellSite&)>;

std::uint64_t morton_encode(LeafCoord c);
LeafCoord morton_decode(std::uint64_t code);

class Octree {
 public:
  // Throws std::invalid_argument unless 0 <= max_level <= kMaxLevel.
  explicit Octree(int max_level);

  int max_level() const { return max_level_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  int leaves_per_axis() const { return 1 << max_level_; }
  int cells_per_axis() const { return kInterior << max_level_; }
  double dx() const { return 1.0 / static_cast<double>(cells_per_axis()); }

  SubGrid& leaf(LeafId id) { return leaves_.at(id); }
  const SubGrid& leaf(LeafId id) const { return leaves_.at(id); }

  LeafId leaf_at(LeafCoord c) const;
  // Periodic neighbour of `id` in direction d.
  LeafId neighbor(LeafId id, Direction d) const { return neighbors_[id * kDirections + direction_index(d)]; }

  // Leaf ids in Morton order.
  std::vector<LeafId> leaf_order() const;

  double total(HydroVar v) const;

 private:
  int max_level_;
  std::vector<SubGrid> leaves_;
  std::vector<LeafId> neighbors_;
};

// Builds the tree and fills every interior cell from `init`. Ghosts are left
// unfilled.
Octree build_unigrid(int max_level, const CellInitializer& init);

// Copies the periodic neighbours' interiors into the ghost layers of one leaf
// (all 26 directions, both layers). Reads other leaves' interiors only, so
// distinct leaves may be exchanged concurrently.
void exchange_ghosts(Octree& tree, LeafId id, FieldSet set);
void exchange_ghosts(Octree& tree, FieldSet set);

// Sets the mass field to rho * dx^3 on the interior.
void update_masses(SubGrid& sub);

}  // namespace octosimd::grid
