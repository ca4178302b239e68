#include "octosimd/grid/subgrid.hpp"

#include <limits>

namespace octosimd::grid {

SubGrid::SubGrid(int level, LeafCoord coord)
    : level_(level), coord_(coord), dx_(1.0 / static_cast<double>(kInterior << level)) {
  // Ghosts start as NaN so a missed exchange cannot go unnoticed.
  const double unset = std::numeric_limits<double>::quiet_NaN();
  for (auto& f : hydro_) f.assign(kExtendedCells, unset);
  mass_.assign(kExtendedCells, unset);
}

double SubGrid::interior_sum(HydroVar v) const {
  const auto f = hydro(v);
  double s = 0.0;
  for (int k = 0; k < kInterior; ++k)
    for (int j = 0; j < kInterior; ++j)
      for (int i = 0; i < kInterior; ++i) s += f[ext_index(i, j, k)];
  return s;
}

}  // namespace octosimd::grid
