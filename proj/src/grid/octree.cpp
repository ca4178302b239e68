#include "octosimd/grid/octree.hpp"

#include <stdexcept>
#include <utility>
#include <string>

namespace octosimd::grid {

namespace {

std::uint64_t spread_bits(std::uint64_t v) {
  std::uint64_t r = 0;
  for (int b = 0; b < 21; ++b) r |= ((v >> b) & 1u) << (3 * b);
  return r;
}

std::uint64_t compact_bits(std::uint64_t v) {
  std::uint64_t r = 0;
  for (int b = 0; b < 21; ++b) r |= ((v >> (3 * b)) & 1u) << b;
  return r;
}

int wrap(int v, int n) { return ((v % n) + n) % n; }

struct GhostSource {
  std::size_t ghost;      // extended index in the receiving leaf
  std::size_t direction;  // which neighbour supplies it
  std::size_t source;     // extended index of the interior cell in that neighbour
};

const std::vector<GhostSource>& ghost_map() {
  static const std::vector<GhostSource> map = [] {
    std::vector<GhostSource> m;
    m.reserve(kExtendedCells - kInteriorCells);
    for (int k = -kGhost; k < kInterior + kGhost; ++k)
      for (int j = -kGhost; j < kInterior + kGhost; ++j)
        for (int i = -kGhost; i < kInterior + kGhost; ++i) {
          if (SubGrid::is_interior(i, j, k)) continue;
          auto side = [](int c) { return c < 0 ? -1 : (c >= kInterior ? 1 : 0); };
          const Direction d{side(i), side(j), side(k)};
          m.push_back({SubGrid::ext_index(i, j, k), direction_index(d),
                       SubGrid::ext_index(i - kInterior * d.dx, j - kInterior * d.dy, k - kInterior * d.dz)});
        }
    return m;
  }();
  return map;
}

}  // namespace

std::uint64_t morton_encode(LeafCoord c) {
  return spread_bits(static_cast<std::uint64_t>(c.x)) | (spread_bits(static_cast<std::uint64_t>(c.y)) << 1) |
         (spread_bits(static_cast<std::uint64_t>(c.z)) << 2);
}

LeafCoord morton_decode(std::uint64_t code) {
  return {static_cast<int>(compact_bits(code)), static_cast<int>(compact_bits(code >> 1)),
          static_cast<int>(compact_bits(code >> 2))};
}

Octree::Octree(int max_level) : max_level_(max_level) {
  if (max_level < 0 || max_level > kMaxLevel) {
    throw std::invalid_argument("max_level must be in [0, " + std::to_string(kMaxLevel) + "], got " +
                                std::to_string(max_level));
  }
  const std::size_t n = std::size_t{1} << (3 * max_level);
  leaves_.reserve(n);
  for (std::size_t id = 0; id < n; ++id) leaves_.emplace_back(max_level, morton_decode(id));

  const int per_axis = leaves_per_axis();
  neighbors_.resize(n * kDirections);
  for (std::size_t id = 0; id < n; ++id) {
    const LeafCoord c = leaves_[id].coord();
    for (std::size_t d = 0; d < kDirections; ++d) {
      const Direction dir = direction_at(d);
      neighbors_[id * kDirections + d] = static_cast<LeafId>(morton_encode(
          {wrap(c.x + dir.dx, per_axis), wrap(c.y + dir.dy, per_axis), wrap(c.z + dir.dz, per_axis)}));
    }
  }
}

LeafId Octree::leaf_at(LeafCoord c) const {
  const int n = leaves_per_axis();
  if (c.x < 0 || c.x >= n || c.y < 0 || c.y >= n || c.z < 0 || c.z >= n) {
    throw std::out_of_range("leaf coordinate outside level " + std::to_string(max_level_));
  }
  return static_cast<LeafId>(morton_encode(c));
}

std::vector<LeafId> Octree::leaf_order() const {
  std::vector<LeafId> ids(leaves_.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  return ids;
}

double Octree::total(HydroVar v) const {
  double s = 0.0;
  for (const auto& l : leaves_) s += l.interior_sum(v);
  return s;
}

Octree build_unigrid(int max_level, const CellInitializer& init) {
  Octree tree(max_level);
  const int n = tree.cells_per_axis();
  const double dx = tree.dx();
  for (LeafId id : tree.leaf_order()) {
    SubGrid& sub = tree.leaf(id);
    const LeafCoord c = sub.coord();
    for (int k = 0; k < kInterior; ++k)
      for (int j = 0; j < kInterior; ++j)
        for (int i = 0; i < kInterior; ++i) {
          CellSite site;
          site.gi = c.x * kInterior + i;
          site.gj = c.y * kInterior + j;
          site.gk = c.z * kInterior + k;
          site.x = (site.gi + 0.5) * dx;
          site.y = (site.gj + 0.5) * dx;
          site.z = (site.gk + 0.5) * dx;
          site.dx = dx;
          site.cells_per_axis = n;
          const HydroState s = init(site);
          const std::size_t e = SubGrid::ext_index(i, j, k);
          sub.hydro(HydroVar::rho)[e] = s.rho;
          sub.hydro(HydroVar::sx)[e] = s.sx;
          sub.hydro(HydroVar::sy)[e] = s.sy;
          sub.hydro(HydroVar::sz)[e] = s.sz;
          sub.hydro(HydroVar::energy)[e] = s.energy;
        }
    update_masses(sub);
  }
  return tree;
}

void exchange_ghosts(Octree& tree, LeafId id, FieldSet set) {
  SubGrid& dst = tree.leaf(id);
  std::array<LeafId, kDirections> nb{};
  for (std::size_t d = 0; d < kDirections; ++d) nb[d] = tree.neighbor(id, direction_at(d));

  const auto& map = ghost_map();
  if (set == FieldSet::hydro) {
    for (std::size_t v = 0; v < kHydroVars; ++v) {
      auto out = dst.hydro(v);
      for (const auto& g : map) out[g.ghost] = std::as_const(tree).leaf(nb[g.direction]).hydro(v)[g.source];
    }
  } else {
    auto out = dst.mass();
    for (const auto& g : map) out[g.ghost] = std::as_const(tree).leaf(nb[g.direction]).mass()[g.source];
  }
  dst.mark_ghosts_filled(set, true);
}

void exchange_ghosts(Octree& tree, FieldSet set) {
  for (LeafId id : tree.leaf_order()) exchange_ghosts(tree, id, set);
}

void update_masses(SubGrid& sub) {
  const double vol = sub.dx() * sub.dx() * sub.dx();
  const auto rho = std::as_const(sub).hydro(HydroVar::rho);
  auto m = sub.mass();
  for (int k = 0; k < kInterior; ++k)
    for (int j = 0; j < kInterior; ++j)
      for (int i = 0; i < kInterior; ++i) {
        const std::size_t e = SubGrid::ext_index(i, j, k);
        m[e] = rho[e] * vol;
      }
  sub.mark_ghosts_filled(FieldSet::gravity, false);
}

}  // namespace octosimd::grid
