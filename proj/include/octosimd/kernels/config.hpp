#pragma once

#include <stdexcept>
#include <string>

#include "octosimd/grid/subgrid.hpp"

namespace octosimd::kernels {

struct HydroConfig {
  double gamma = 1.4;
  double cfl = 0.4;
  double positivity_floor = 1e-12;

  void validate() const {
    if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
    if (!(cfl > 0.0 && cfl < 1.0)) throw std::invalid_argument("cfl must lie in (0, 1)");
    if (!(positivity_floor > 0.0)) throw std::invalid_argument("positivity floor must be positive");
  }
};

struct GravityConfig {
  double theta = 0.34;         // opening parameter
  double eps = 0.5;            // Plummer softening, in cell widths
  int expansion_order = 1;     // 0: monopole clusters, 1: plus dipole

  void validate() const {
    if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in (0, 1]");
    if (!(eps > 0.0)) throw std::invalid_argument("softening must be positive");
    if (expansion_order != 0 && expansion_order != 1) throw std::invalid_argument("expansion order must be 0 or 1");
  }
};

// A kernel hit a state it cannot process. Carries the leaf and cell.
class KernelError : public std::runtime_error {
 public:
  KernelError(const std::string& what, grid::LeafCoord leaf, int i, int j, int k)
      : std::runtime_error(what + " at leaf (" + std::to_string(leaf.x) + "," + std::to_string(leaf.y) + "," +
                           std::to_string(leaf.z) + ") cell (" + std::to_string(i) + "," + std::to_string(j) + "," +
                           std::to_string(k) + ")"),
        leaf_(leaf),
        cell_{i, j, k} {}

  grid::LeafCoord leaf() const { return leaf_; }
  grid::LeafCoord cell() const { return cell_; }

 private:
  grid::LeafCoord leaf_;
  grid::LeafCoord cell_;
};

}  // namespace octosimd::kernels
