#include "octosimd/kernels/hydro.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>

#include "rows.hpp"

namespace octosimd::kernels {

using grid::Direction;
using grid::kDirections;
using grid::kExtent;
using grid::kHydroVars;
using grid::kInterior;
using grid::SubGrid;

namespace {

constexpr std::array<double, 3> kSimpson{1.0, 4.0, 1.0};

template <class V>
V minmod(const V& a, const V& b) {
  const V zero(0.0);
  const auto same_sign = ((a > zero) & (b > zero)) | ((a < zero) & (b < zero));
  return choose(same_sign, choose(abs(a) < abs(b), a, b), zero);
}

template <class V>
void reconstruct_impl(const SubGrid& sub, const HydroConfig& cfg, QuadratureField& out, std::size_t begin,
                      std::size_t end) {
  constexpr std::size_t W = V::width;
  const V half(0.5);
  const V two(2.0);
  const V zero(0.0);
  const V gm1(cfg.gamma - 1.0);
  const V floor(cfg.positivity_floor);
  constexpr std::ptrdiff_t sy = kExtent;
  constexpr std::ptrdiff_t sz = kExtent * kExtent;

  for_each_row(kReconExtent, begin, end, [&](int j, int k, int ib, int ie) {
    for (int x0 = ib; x0 < ie; x0 += static_cast<int>(W)) {
      const std::size_t active = std::min<std::size_t>(W, static_cast<std::size_t>(ie - x0));
      const int i = x0 - kReconRing;
      const int jj = j - kReconRing;
      const int kk = k - kReconRing;
      const std::size_t e = SubGrid::ext_index(i, jj, kk);
      const std::size_t r = QuadratureField::cell_index(i, jj, kk);

      std::array<V, kHydroVars> centre;
      std::array<std::array<V, 3>, kHydroVars> slope;
      for (std::size_t v = 0; v < kHydroVars; ++v) {
        const double* u = sub.hydro(v).data() + e;
        const V c = simd::load_partial<V>(u, active);
        centre[v] = c;
        slope[v] = {
            minmod(simd::load_partial<V>(u + 1, active) - c, c - simd::load_partial<V>(u - 1, active)),
            minmod(simd::load_partial<V>(u + sy, active) - c, c - simd::load_partial<V>(u - sy, active)),
            minmod(simd::load_partial<V>(u + sz, active) - c, c - simd::load_partial<V>(u - sz, active)),
        };
      }

      for (std::size_t dir = 0; dir < kDirections; ++dir) {
        const Direction d = grid::direction_at(dir);
        std::array<V, kHydroVars> value;
        for (std::size_t v = 0; v < kHydroVars; ++v) {
          V sum;
          bool first = true;
          for (int a = 0; a < 3; ++a) {
            const int da = d.component(a);
            if (da == 0) continue;
            const V term = da > 0 ? slope[v][a] : -slope[v][a];
            sum = first ? term : sum + term;
            first = false;
          }
          value[v] = centre[v] + half * sum;
        }
        value[0] = max(value[0], floor);
        value[4] = max(value[4], floor);

        // Independently limited momenta can leave no room for internal
        // energy at a corner; such points fall back to the cell average.
        const V kinetic = (value[1] * value[1] + value[2] * value[2] + value[3] * value[3]) / (two * value[0]);
        const auto keep = gm1 * (value[4] - kinetic) > zero;
        for (std::size_t v = 0; v < kHydroVars; ++v) {
          simd::store_partial(choose(keep, value[v], centre[v]), out.values(v, dir).data() + r, active);
        }
      }
    }
  });
}

struct FluxContext {
  const SubGrid& sub;
  const QuadratureField& q;
  const HydroConfig& cfg;
  FaceFluxes& out;
};

// Rusanov flux through a contiguous x-run of `count` faces normal to `axis`,
// starting at face (fi, fj, fk). Returns the running lane-wise max speed.
template <class V>
V flux_run(const FluxContext& ctx, int axis, int fi, int fj, int fk, int count, V vmax) {
  constexpr std::size_t W = V::width;
  const V half(0.5);
  const V zero(0.0);
  const V gamma(ctx.cfg.gamma);
  const V gm1(ctx.cfg.gamma - 1.0);
  const V two(2.0);

  const int t1 = axis == 0 ? 1 : 0;
  const int t2 = axis == 2 ? 1 : 2;

  int ex = 0, ey = 0, ez = 0;
  (axis == 0 ? ex : axis == 1 ? ey : ez) = 1;

  for (int x0 = 0; x0 < count; x0 += static_cast<int>(W)) {
    const std::size_t active = std::min<std::size_t>(W, static_cast<std::size_t>(count - x0));
    const auto live = simd::tail_mask<V>(active);
    const int i = fi + x0;
    const std::size_t left = QuadratureField::cell_index(i - ex, fj - ey, fk - ez);
    const std::size_t right = QuadratureField::cell_index(i, fj, fk);

    std::array<V, kHydroVars> acc{};
    for (std::size_t v = 0; v < kHydroVars; ++v) acc[v] = zero;

    for (int b = -1; b <= 1; ++b) {
      for (int a = -1; a <= 1; ++a) {
        Direction dl{}, dr{};
        auto set = [](Direction& d, int ax, int val) { (ax == 0 ? d.dx : ax == 1 ? d.dy : d.dz) = val; };
        set(dl, axis, 1);
        set(dr, axis, -1);
        set(dl, t1, a);
        set(dr, t1, a);
        set(dl, t2, b);
        set(dr, t2, b);
        const std::size_t il = grid::direction_index(dl);
        const std::size_t ir = grid::direction_index(dr);

        std::array<V, kHydroVars> ul, ur;
        for (std::size_t v = 0; v < kHydroVars; ++v) {
          ul[v] = simd::load_partial<V>(ctx.q.values(v, il).data() + left, active);
          ur[v] = simd::load_partial<V>(ctx.q.values(v, ir).data() + right, active);
        }

        auto primitive = [&](const std::array<V, kHydroVars>& u, V& vn, V& p, V& c) {
          const V kinetic = (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]) / (two * u[0]);
          vn = u[1 + axis] / u[0];
          p = gm1 * (u[4] - kinetic);
          c = sqrt(gamma * p / u[0]);
        };
        V vnl, pl, cl, vnr, pr, cr;
        primitive(ul, vnl, pl, cl);
        primitive(ur, vnr, pr, cr);

        const auto bad_l = (ul[0] <= zero) | (pl <= zero);
        const auto bad_r = (ur[0] <= zero) | (pr <= zero);
        if (any((bad_l | bad_r) & live)) {
          for (std::size_t lane = 0; lane < active; ++lane) {
            if (bad_l[lane] || bad_r[lane]) {
              const int ci = i + static_cast<int>(lane) - (bad_l[lane] ? ex : 0);
              const int cj = fj - (bad_l[lane] ? ey : 0);
              const int ck = fk - (bad_l[lane] ? ez : 0);
              throw KernelError("non-positive density or pressure in flux", ctx.sub.coord(), ci, cj, ck);
            }
          }
        }

        const V smax = max(abs(vnl) + cl, abs(vnr) + cr);
        vmax = max(vmax, choose(live, smax, zero));

        std::array<V, kHydroVars> fl, fr;
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

        const V w(face_weight(a, b));
        for (std::size_t v = 0; v < kHydroVars; ++v) {
          const V fstar = half * (fl[v] + fr[v]) - half * smax * (ur[v] - ul[v]);
          acc[v] = acc[v] + w * fstar;
        }
      }
    }

    const std::size_t f = FaceFluxes::face_index(axis, i, fj, fk);
    for (std::size_t v = 0; v < kHydroVars; ++v) {
      simd::store_partial(acc[v], ctx.out.values(axis, v).data() + f, active);
    }
  }
  return vmax;
}

template <class V>
double flux_impl(const FluxContext& ctx, std::size_t begin, std::size_t end) {
  V vmax(0.0);
  for_each_row(kInterior, begin, end, [&](int j, int k, int ib, int ie) {
    vmax = flux_run<V>(ctx, 0, ib, j, k, ie - ib + (ie == kInterior ? 1 : 0), vmax);
    vmax = flux_run<V>(ctx, 1, ib, j, k, ie - ib, vmax);
    if (j == kInterior - 1) vmax = flux_run<V>(ctx, 1, ib, kInterior, k, ie - ib, vmax);
    vmax = flux_run<V>(ctx, 2, ib, j, k, ie - ib, vmax);
    if (k == kInterior - 1) vmax = flux_run<V>(ctx, 2, ib, j, kInterior, ie - ib, vmax);
  });
  return reduce_max(vmax);
}

}  // namespace

double face_weight(int t1, int t2) { return kSimpson[t1 + 1] * kSimpson[t2 + 1] / 36.0; }

FaceFluxes::FaceFluxes() : flux_(3 * kHydroVars) {
  for (int axis = 0; axis < 3; ++axis)
    for (std::size_t v = 0; v < kHydroVars; ++v) flux_[axis * kHydroVars + v].assign(face_count(axis), 0.0);
}

void reconstruct(const SubGrid& sub, const HydroConfig& cfg, const simd::Backend& backend, QuadratureField& out,
                 std::size_t begin, std::size_t end) {
  if (!sub.ghosts_filled(grid::FieldSet::hydro)) {
    throw std::logic_error("reconstruct needs filled hydro ghosts");
  }
  simd::with_backend(backend, [&]<class V>() { reconstruct_impl<V>(sub, cfg, out, begin, end); });
}

QuadratureField reconstruct(const SubGrid& sub, const HydroConfig& cfg, const simd::Backend& backend) {
  QuadratureField q;
  reconstruct(sub, cfg, backend, q, 0, kReconCells);
  return q;
}

double flux(const SubGrid& sub, const QuadratureField& q, const HydroConfig& cfg, const simd::Backend& backend,
            FaceFluxes& out, std::size_t begin, std::size_t end) {
  const FluxContext ctx{sub, q, cfg, out};
  return simd::with_backend(backend, [&]<class V>() { return flux_impl<V>(ctx, begin, end); });
}

FaceFluxes flux(const SubGrid& sub, const QuadratureField& q, const HydroConfig& cfg, const simd::Backend& backend) {
  FaceFluxes f;
  f.max_speed = flux(sub, q, cfg, backend, f, 0, grid::kInteriorCells);
  return f;
}

void hydro_update(SubGrid& sub, const FaceFluxes& fluxes, double dt, const HydroConfig& cfg) {
  const double dx = sub.dx();
  if (!(dt >= 0.0)) throw std::invalid_argument("time step must be non-negative");
  if (fluxes.max_speed > 0.0 && !(dt <= cfg.cfl * dx / fluxes.max_speed)) {
    throw std::invalid_argument("time step " + std::to_string(dt) + " violates the CFL limit " +
                                std::to_string(cfg.cfl * dx / fluxes.max_speed));
  }
  const double coef = dt / dx;
  for (std::size_t v = 0; v < kHydroVars; ++v) {
    auto u = sub.hydro(v);
    const auto fx = fluxes.values(0, v);
    const auto fy = fluxes.values(1, v);
    const auto fz = fluxes.values(2, v);
    for (int k = 0; k < kInterior; ++k)
      for (int j = 0; j < kInterior; ++j)
        for (int i = 0; i < kInterior; ++i) {
          const double div = (fx[FaceFluxes::face_index(0, i + 1, j, k)] - fx[FaceFluxes::face_index(0, i, j, k)]) +
                             (fy[FaceFluxes::face_index(1, i, j + 1, k)] - fy[FaceFluxes::face_index(1, i, j, k)]) +
                             (fz[FaceFluxes::face_index(2, i, j, k + 1)] - fz[FaceFluxes::face_index(2, i, j, k)]);
          u[SubGrid::ext_index(i, j, k)] -= coef * div;
        }
  }
  sub.mark_ghosts_filled(grid::FieldSet::hydro, false);

  const auto rho = std::as_const(sub).hydro(grid::HydroVar::rho);
  const auto e = std::as_const(sub).hydro(grid::HydroVar::energy);
  for (int k = 0; k < kInterior; ++k)
    for (int j = 0; j < kInterior; ++j)
      for (int i = 0; i < kInterior; ++i) {
        const std::size_t c = SubGrid::ext_index(i, j, k);
        if (!(rho[c] > 0.0) || !(e[c] > 0.0)) {
          throw KernelError("non-positive density or energy after update", sub.coord(), i, j, k);
        }
      }
}

std::array<double, kHydroVars> euler_flux(const std::array<double, kHydroVars>& u, int axis, double gamma) {
  const double kinetic = (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]) / (2.0 * u[0]);
  const double vn = u[1 + axis] / u[0];
  const double p = (gamma - 1.0) * (u[4] - kinetic);
  std::array<double, kHydroVars> f{};
  f[0] = u[1 + axis];
  for (int m = 0; m < 3; ++m) f[1 + m] = u[1 + m] * vn + (m == axis ? p : 0.0);
  f[4] = (u[4] + p) * vn;
  return f;
}

}  // namespace octosimd::kernels
