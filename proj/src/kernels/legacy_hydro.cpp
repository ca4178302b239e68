#include "octosimd/kernels/legacy_hydro.hpp"

#include <cmath>

#include "rows.hpp"

namespace octosimd::kernels::legacy {

using grid::Direction;
using grid::kDirections;
using grid::kExtent;
using grid::kHydroVars;
using grid::kInterior;
using grid::SubGrid;

namespace {

double minmod(double a, double b) {
  if ((a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0)) return std::fabs(a) < std::fabs(b) ? a : b;
  return 0.0;
}

void face_flux(const SubGrid& sub, const QuadratureField& q, const HydroConfig& cfg, FaceFluxes& out, int axis,
               int i, int j, int k, double& max_speed) {
  int e[3] = {0, 0, 0};
  e[axis] = 1;
  const int t1 = axis == 0 ? 1 : 0;
  const int t2 = axis == 2 ? 1 : 2;
  const std::size_t left = QuadratureField::cell_index(i - e[0], j - e[1], k - e[2]);
  const std::size_t right = QuadratureField::cell_index(i, j, k);
  const double g = cfg.gamma;

  double acc[kHydroVars] = {0.0, 0.0, 0.0, 0.0, 0.0};
  for (int b = -1; b <= 1; ++b) {
    for (int a = -1; a <= 1; ++a) {
      int dl[3], dr[3];
      dl[axis] = 1;
      dr[axis] = -1;
      dl[t1] = dr[t1] = a;
      dl[t2] = dr[t2] = b;
      const std::size_t il = grid::direction_index({dl[0], dl[1], dl[2]});
      const std::size_t ir = grid::direction_index({dr[0], dr[1], dr[2]});

      double ul[kHydroVars], ur[kHydroVars];
      for (std::size_t v = 0; v < kHydroVars; ++v) {
        ul[v] = q.values(v, il)[left];
        ur[v] = q.values(v, ir)[right];
      }

      const double kl = (ul[1] * ul[1] + ul[2] * ul[2] + ul[3] * ul[3]) / (2.0 * ul[0]);
      const double kr = (ur[1] * ur[1] + ur[2] * ur[2] + ur[3] * ur[3]) / (2.0 * ur[0]);
      const double vnl = ul[1 + axis] / ul[0];
      const double vnr = ur[1 + axis] / ur[0];
      const double pl = (g - 1.0) * (ul[4] - kl);
      const double pr = (g - 1.0) * (ur[4] - kr);
      if (ul[0] <= 0.0 || pl <= 0.0) {
        throw KernelError("non-positive density or pressure in flux", sub.coord(), i - e[0], j - e[1], k - e[2]);
      }
      if (ur[0] <= 0.0 || pr <= 0.0) {
        throw KernelError("non-positive density or pressure in flux", sub.coord(), i, j, k);
      }
      const double cl = std::sqrt(g * pl / ul[0]);
      const double cr = std::sqrt(g * pr / ur[0]);

      const double sl = std::fabs(vnl) + cl;
      const double sr = std::fabs(vnr) + cr;
      const double smax = sl < sr ? sr : sl;
      if (max_speed < smax) max_speed = smax;

      double fl[kHydroVars], fr[kHydroVars];
      fl[0] = ul[1 + axis];
      fr[0] = ur[1 + axis];
      for (int m = 0; m < 3; ++m) {
        fl[1 + m] = ul[1 + m] * vnl;
        fr[1 + m] = ur[1 + m] * vnr;
        if (m == axis) {
          fl[1 + m] = fl[1 + m] + pl;
          fr[1 + m] = fr[1 + m] + pr;
        }
      }
      fl[4] = (ul[4] + pl) * vnl;
      fr[4] = (ur[4] + pr) * vnr;

      const double w = face_weight(a, b);
      for (std::size_t v = 0; v < kHydroVars; ++v) {
        acc[v] = acc[v] + w * (0.5 * (fl[v] + fr[v]) - 0.5 * smax * (ur[v] - ul[v]));
      }
    }
  }
  const std::size_t f = FaceFluxes::face_index(axis, i, j, k);
  for (std::size_t v = 0; v < kHydroVars; ++v) out.values(axis, v)[f] = acc[v];
}

}  // namespace

void reconstruct(const SubGrid& sub, const HydroConfig& cfg, QuadratureField& out, std::size_t begin,
                 std::size_t end) {
  if (!sub.ghosts_filled(grid::FieldSet::hydro)) throw std::logic_error("reconstruct needs filled hydro ghosts");

  for_each_row(kReconExtent, begin, end, [&](int jr, int kr, int ib, int ie) {
    for (int ir = ib; ir < ie; ++ir) {
      const int i = ir - kReconRing, j = jr - kReconRing, k = kr - kReconRing;
      const std::size_t c = SubGrid::ext_index(i, j, k);
      const std::size_t r = QuadratureField::cell_index(i, j, k);
      double centre[kHydroVars];
      double slope[kHydroVars][3];
      for (std::size_t v = 0; v < kHydroVars; ++v) {
        const auto u = sub.hydro(v);
        centre[v] = u[c];
        slope[v][0] = minmod(u[c + 1] - u[c], u[c] - u[c - 1]);
        slope[v][1] = minmod(u[c + kExtent] - u[c], u[c] - u[c - kExtent]);
        slope[v][2] = minmod(u[c + kExtent * kExtent] - u[c], u[c] - u[c - kExtent * kExtent]);
      }
      for (std::size_t dir = 0; dir < kDirections; ++dir) {
        const Direction d = grid::direction_at(dir);
        double value[kHydroVars];
        for (std::size_t v = 0; v < kHydroVars; ++v) {
          double sum = 0.0;
          bool first = true;
          for (int a = 0; a < 3; ++a) {
            const int da = d.component(a);
            if (da == 0) continue;
            const double term = da > 0 ? slope[v][a] : -slope[v][a];
            sum = first ? term : sum + term;
            first = false;
          }
          value[v] = centre[v] + 0.5 * sum;
        }
        if (value[0] < cfg.positivity_floor) value[0] = cfg.positivity_floor;
        if (value[4] < cfg.positivity_floor) value[4] = cfg.positivity_floor;
        const double kinetic = (value[1] * value[1] + value[2] * value[2] + value[3] * value[3]) / (2.0 * value[0]);
        const bool keep = (cfg.gamma - 1.0) * (value[4] - kinetic) > 0.0;
        for (std::size_t v = 0; v < kHydroVars; ++v) out.values(v, dir)[r] = keep ? value[v] : centre[v];
      }
    }
  });
}

double flux(const SubGrid& sub, const QuadratureField& q, const HydroConfig& cfg, FaceFluxes& out,
            std::size_t begin, std::size_t end) {
  double max_speed = 0.0;
  for_each_row(kInterior, begin, end, [&](int j, int k, int ib, int ie) {
    for (int i = ib; i < ie; ++i) {
      face_flux(sub, q, cfg, out, 0, i, j, k, max_speed);
      if (i == kInterior - 1) face_flux(sub, q, cfg, out, 0, kInterior, j, k, max_speed);
      face_flux(sub, q, cfg, out, 1, i, j, k, max_speed);
      if (j == kInterior - 1) face_flux(sub, q, cfg, out, 1, i, kInterior, k, max_speed);
      face_flux(sub, q, cfg, out, 2, i, j, k, max_speed);
      if (k == kInterior - 1) face_flux(sub, q, cfg, out, 2, i, j, kInterior, max_speed);
    }
  });
  return max_speed;
}

}  // namespace octosimd::kernels::legacy
