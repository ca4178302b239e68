#include "octosimd/kernels/gravity.hpp"

#include <algorithm>
#include <cmath>

#include "rows.hpp"

namespace octosimd::kernels {

using grid::kInterior;

namespace {

template <class V>
void monopole_impl(const grid::SubGrid& target, const SourceNeighborhood& sources, const GravityConfig& cfg,
                   grid::GravityField& out, std::size_t begin, std::size_t end) {
  constexpr std::size_t W = V::width;
  const double dx = target.dx();
  const int reach = interaction_reach(cfg);
  const V radius2(interaction_radius2(cfg));
  const V eps2(cfg.eps * cfg.eps);
  const V vdx(dx);
  const V zero(0.0);
  const V one(1.0);
  const double* mass = sources.mass.data();

  for_each_row(kInterior, begin, end, [&](int j, int k, int ib, int ie) {
    for (int x0 = ib; x0 < ie; x0 += static_cast<int>(W)) {
      const std::size_t active = std::min<std::size_t>(W, static_cast<std::size_t>(ie - x0));
      V phi(0.0), gx(0.0), gy(0.0), gz(0.0);

      for (int oz = -reach; oz <= reach; ++oz) {
        for (int oy = -reach; oy <= reach; ++oy) {
          for (int ox = -reach; ox <= reach; ++ox) {
            const V r2(static_cast<double>(ox * ox + oy * oy + oz * oz));
            const auto use = (r2 <= radius2) & (r2 > zero);
            if (none(use)) continue;

            const V m = simd::load_partial<V>(
                mass + SourceNeighborhood::index(kInterior + x0 + ox, kInterior + j + oy, kInterior + k + oz), active);
            const V inv = one / (vdx * sqrt(r2 + eps2));
            const V inv3 = inv * inv * inv;
            phi = choose(use, phi - m * inv, phi);
            gx = choose(use, gx + m * V(ox * dx) * inv3, gx);
            gy = choose(use, gy + m * V(oy * dx) * inv3, gy);
            gz = choose(use, gz + m * V(oz * dx) * inv3, gz);
          }
        }
      }

      const std::size_t c = grid::SubGrid::interior_index(x0, j, k);
      simd::store_partial(phi, out.phi.data() + c, active);
      simd::store_partial(gx, out.gx.data() + c, active);
      simd::store_partial(gy, out.gy.data() + c, active);
      simd::store_partial(gz, out.gz.data() + c, active);
    }
  });
}

template <class V>
void multipole_impl(const grid::SubGrid& target, const SourceNeighborhood& sources, const ClusterSet& clusters,
                    const GravityConfig& cfg, grid::GravityField& out, std::size_t begin, std::size_t end) {
  constexpr std::size_t W = V::width;
  const double dx = target.dx();
  const bool dipole = cfg.expansion_order >= 1;
  const V radius2(interaction_radius2(cfg));
  const V eps2(cfg.eps * cfg.eps);
  const V vdx(dx);
  const V zero(0.0);
  const V one(1.0);
  const V three(3.0);
  const double* mass = sources.mass.data();

  for_each_row(kInterior, begin, end, [&](int j, int k, int ib, int ie) {
    for (int x0 = ib; x0 < ie; x0 += static_cast<int>(W)) {
      const std::size_t active = std::min<std::size_t>(W, static_cast<std::size_t>(ie - x0));
      const auto live = simd::tail_mask<V>(active);
      // Target centres in neighbourhood cell units.
      const V tx = V(kInterior + x0 + 0.5) + V::lane_index();
      const V ty(kInterior + j + 0.5);
      const V tz(kInterior + k + 0.5);
      V phi(0.0), gx(0.0), gy(0.0), gz(0.0);

      for (int ck = 0; ck < kClusterExtent; ++ck) {
        for (int cj = 0; cj < kClusterExtent; ++cj) {
          for (int ci = 0; ci < kClusterExtent; ++ci) {
            const std::size_t c = ClusterSet::index(ci, cj, ck);
            const V rx = tx - V(2.0 * ci + 1.0);
            const V ry = ty - V(2.0 * cj + 1.0);
            const V rz = tz - V(2.0 * ck + 1.0);
            const V d2 = rx * rx + ry * ry + rz * rz;
            const auto far = d2 > radius2;

            if (any(far)) {
              const V inv = one / (vdx * sqrt(d2 + eps2));
              const V inv2 = inv * inv;
              const V inv3 = inv2 * inv;
              const V px = rx * vdx;
              const V py = ry * vdx;
              const V pz = rz * vdx;
              const V m(clusters.mass[c]);
              V dphi = -(m * inv);
              V dgx = -(m * px * inv3);
              V dgy = -(m * py * inv3);
              V dgz = -(m * pz * inv3);
              if (dipole) {
                const V dxm(clusters.dipole_x[c]);
                const V dym(clusters.dipole_y[c]);
                const V dzm(clusters.dipole_z[c]);
                const V dr = dxm * px + dym * py + dzm * pz;
                const V inv5 = inv3 * inv2;
                dphi = dphi - dr * inv3;
                dgx = dgx + (dxm * inv3 - three * dr * px * inv5);
                dgy = dgy + (dym * inv3 - three * dr * py * inv5);
                dgz = dgz + (dzm * inv3 - three * dr * pz * inv5);
              }
              phi = choose(far, phi + dphi, phi);
              gx = choose(far, gx + dgx, gx);
              gy = choose(far, gy + dgy, gy);
              gz = choose(far, gz + dgz, gz);
            }

            const auto near = (!far) & live;
            if (!any(near)) continue;
            for (int sz = 2 * ck; sz < 2 * ck + 2; ++sz) {
              for (int sy = 2 * cj; sy < 2 * cj + 2; ++sy) {
                for (int sx = 2 * ci; sx < 2 * ci + 2; ++sx) {
                  const V ox = V(sx + 0.5) - tx;
                  const V oy = V(sy + 0.5) - ty;
                  const V oz = V(sz + 0.5) - tz;
                  const V r2 = ox * ox + oy * oy + oz * oz;
                  const auto use = near & (r2 > zero);
                  const V m(mass[SourceNeighborhood::index(sx, sy, sz)]);
                  const V inv = one / (vdx * sqrt(r2 + eps2));
                  const V inv3 = inv * inv * inv;
                  phi = choose(use, phi - m * inv, phi);
                  gx = choose(use, gx + m * (ox * vdx) * inv3, gx);
                  gy = choose(use, gy + m * (oy * vdx) * inv3, gy);
                  gz = choose(use, gz + m * (oz * vdx) * inv3, gz);
                }
              }
            }
          }
        }
      }

      const std::size_t c = grid::SubGrid::interior_index(x0, j, k);
      simd::store_partial(phi, out.phi.data() + c, active);
      simd::store_partial(gx, out.gx.data() + c, active);
      simd::store_partial(gy, out.gy.data() + c, active);
      simd::store_partial(gz, out.gz.data() + c, active);
    }
  });
}

}  // namespace

SourceNeighborhood gather_sources(const grid::Octree& tree, grid::LeafId target) {
  SourceNeighborhood n;
  for (int lz = -1; lz <= 1; ++lz)
    for (int ly = -1; ly <= 1; ++ly)
      for (int lx = -1; lx <= 1; ++lx) {
        const grid::LeafId id =
            (lx == 0 && ly == 0 && lz == 0) ? target : tree.neighbor(target, grid::Direction{lx, ly, lz});
        const auto m = tree.leaf(id).mass();
        for (int k = 0; k < kInterior; ++k)
          for (int j = 0; j < kInterior; ++j)
            for (int i = 0; i < kInterior; ++i) {
              n.mass[SourceNeighborhood::index((lx + 1) * kInterior + i, (ly + 1) * kInterior + j,
                                               (lz + 1) * kInterior + k)] = m[grid::SubGrid::ext_index(i, j, k)];
            }
      }
  return n;
}

ClusterSet aggregate_clusters(const SourceNeighborhood& sources, double dx) {
  ClusterSet c;
  for (int ck = 0; ck < kClusterExtent; ++ck)
    for (int cj = 0; cj < kClusterExtent; ++cj)
      for (int ci = 0; ci < kClusterExtent; ++ci) {
        const std::size_t id = ClusterSet::index(ci, cj, ck);
        for (int oz = 0; oz < 2; ++oz)
          for (int oy = 0; oy < 2; ++oy)
            for (int ox = 0; ox < 2; ++ox) {
              const double m = sources.mass[SourceNeighborhood::index(2 * ci + ox, 2 * cj + oy, 2 * ck + oz)];
              c.mass[id] += m;
              c.dipole_x[id] += m * ((ox - 0.5) * dx);
              c.dipole_y[id] += m * ((oy - 0.5) * dx);
              c.dipole_z[id] += m * ((oz - 0.5) * dx);
            }
      }
  return c;
}

double interaction_radius2(const GravityConfig& cfg) {
  const double r = 1.0 / cfg.theta;
  return r * r;
}

int interaction_reach(const GravityConfig& cfg) {
  const double r2 = interaction_radius2(cfg);
  int reach = 0;
  while (reach < kInterior && static_cast<double>((reach + 1) * (reach + 1)) <= r2) ++reach;
  return reach;
}

void monopole(const grid::SubGrid& target, const SourceNeighborhood& sources, const GravityConfig& cfg,
              const simd::Backend& backend, grid::GravityField& out, std::size_t begin, std::size_t end) {
  cfg.validate();
  simd::with_backend(backend, [&]<class V>() { monopole_impl<V>(target, sources, cfg, out, begin, end); });
}

void multipole(const grid::SubGrid& target, const SourceNeighborhood& sources, const ClusterSet& clusters,
               const GravityConfig& cfg, const simd::Backend& backend, grid::GravityField& out, std::size_t begin,
               std::size_t end) {
  cfg.validate();
  simd::with_backend(backend,
                     [&]<class V>() { multipole_impl<V>(target, sources, clusters, cfg, out, begin, end); });
}

grid::GravityField monopole_kernel(const grid::SubGrid& target, const SourceNeighborhood& sources,
                                   const GravityConfig& cfg, const simd::Backend& backend) {
  grid::GravityField out;
  monopole(target, sources, cfg, backend, out, 0, grid::kInteriorCells);
  return out;
}

grid::GravityField multipole_kernel(const grid::SubGrid& target, const SourceNeighborhood& sources,
                                    const GravityConfig& cfg, const simd::Backend& backend, runtime::Pool& pool,
                                    std::size_t n_tasks) {
  if (n_tasks < 1) throw std::invalid_argument("n_tasks must be at least 1");
  cfg.validate();
  const ClusterSet clusters = aggregate_clusters(sources, target.dx());
  grid::GravityField out;
  runtime::launch_kernel(pool, grid::kInteriorCells, n_tasks,
                         [&](std::size_t, runtime::ChunkRange r) {
                           multipole(target, sources, clusters, cfg, backend, out, r.begin, r.end);
                         })
      .get();
  return out;
}

}  // namespace octosimd::kernels
