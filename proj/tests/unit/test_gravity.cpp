#include <doctest.h>

#include <cmath>
#include <random>

#include "octosimd/kernels/gravity.hpp"
#include "support/fixtures.hpp"

using namespace octosimd;
using namespace octosimd::kernels;

namespace {

constexpr int kLo = grid::kInterior;

std::size_t src_index(int i, int j, int k) { return SourceNeighborhood::index(kLo + i, kLo + j, kLo + k); }

double rel_max_error(const std::vector<double>& got, const std::vector<long double>& want) {
  long double scale = 0.0L;
  for (auto w : want) scale = std::max(scale, std::fabs(w));
  return fixtures::max_abs_error(got, want) / static_cast<double>(scale);
}

}  // namespace

TEST_CASE("interaction radius") {
  CHECK(interaction_reach(GravityConfig{1.0, 0.5, 1}) == 1);
  CHECK(interaction_reach(GravityConfig{0.5, 0.5, 1}) == 2);
  CHECK(interaction_reach(GravityConfig{0.34, 0.5, 1}) == 2);
  CHECK(interaction_reach(GravityConfig{0.2, 0.5, 1}) == 5);
  CHECK_THROWS_AS(GravityConfig({0.0, 0.5, 1}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GravityConfig({0.3, 0.5, 2}).validate(), std::invalid_argument);
}

TEST_CASE("single unit source at one cell") {
  grid::SubGrid target(1, {});
  SourceNeighborhood src;
  src.mass[src_index(4, 3, 3)] = 1.0;
  const GravityConfig cfg{1.0, 1e-9, 1};
  for (const auto& b : simd::available_backends()) {
    const auto f = monopole_kernel(target, src, cfg, b);
    const std::size_t t = grid::SubGrid::interior_index(3, 3, 3);
    CHECK(f.phi[t] == doctest::Approx(-1.0 / target.dx()).epsilon(1e-15));
    CHECK(f.gx[t] == doctest::Approx(1.0 / (target.dx() * target.dx())).epsilon(1e-15));
    CHECK(f.gy[t] == 0.0);
    CHECK(f.phi[grid::SubGrid::interior_index(4, 3, 3)] == 0.0);
    CHECK(f.phi[grid::SubGrid::interior_index(6, 3, 3)] == 0.0);
  }
}

TEST_CASE("self interaction is masked out") {
  grid::SubGrid target(1, {});
  SourceNeighborhood src;
  src.mass[src_index(2, 5, 1)] = 3.0;
  for (const auto& b : simd::available_backends()) {
    const auto f = monopole_kernel(target, src, GravityConfig{}, b);
    CHECK(f.phi[grid::SubGrid::interior_index(2, 5, 1)] == 0.0);
    CHECK(f.gz[grid::SubGrid::interior_index(2, 5, 1)] == 0.0);
  }
}

TEST_CASE("monopole matches a direct triple loop") {
  std::mt19937_64 rng(1234);
  grid::SubGrid target(2, {});
  const GravityConfig cfg;
  for (int trial = 0; trial < 3; ++trial) {
    const SourceNeighborhood src = fixtures::random_sources(rng, target.dx());
    const auto want = fixtures::direct_sum(src, target.dx(), cfg.eps, interaction_radius2(cfg));
    for (const auto& b : simd::available_backends()) {
      const auto f = monopole_kernel(target, src, cfg, b);
      CHECK(rel_max_error(f.phi, want.phi) <= 1e-13);
      CHECK(rel_max_error(f.gx, want.gx) <= 1e-13);
      CHECK(rel_max_error(f.gy, want.gy) <= 1e-13);
      CHECK(rel_max_error(f.gz, want.gz) <= 1e-13);
    }
  }
}

TEST_CASE("mirror-placed equal masses give a mirrored potential") {
  grid::SubGrid target(1, {});
  SourceNeighborhood src;
  src.mass[src_index(1, 4, 4)] = 2.0;
  src.mass[src_index(6, 4, 4)] = 2.0;
  runtime::Pool pool(1);
  for (int order = 0; order <= 1; ++order) {
    const GravityConfig cfg{0.34, 0.5, order};
    const auto mono = monopole_kernel(target, src, cfg, simd::scalar_backend());
    const auto multi = multipole_kernel(target, src, cfg, simd::scalar_backend(), pool, 1);
    for (int k = 0; k < 8; ++k)
      for (int j = 0; j < 8; ++j)
        for (int i = 0; i < 8; ++i) {
          const auto a = grid::SubGrid::interior_index(i, j, k), m = grid::SubGrid::interior_index(7 - i, j, k);
          CHECK(mono.phi[a] == doctest::Approx(mono.phi[m]).epsilon(1e-13));
          CHECK(multi.phi[a] == doctest::Approx(multi.phi[m]).epsilon(1e-13));
        }
  }
}

TEST_CASE("one mass at a cluster centre behaves as a point mass") {
  grid::SubGrid target(1, {});
  SourceNeighborhood src;
  // Cluster (1,1,1) spans cells [2,4)^3 of the neighbourhood; put its mass in
  // one cell and compare against a point at the cluster centre.
  src.mass[SourceNeighborhood::index(2, 2, 2)] = 1.5;
  runtime::Pool pool(1);
  const GravityConfig cfg{0.34, 0.5, 0};
  const auto f = multipole_kernel(target, src, cfg, simd::scalar_backend(), pool, 1);
  const double dx = target.dx();
  for (int k = 0; k < 8; ++k)
    for (int j = 0; j < 8; ++j)
      for (int i = 0; i < 8; ++i) {
        const double rx = kLo + i + 0.5 - 3.0, ry = kLo + j + 0.5 - 3.0, rz = kLo + k + 0.5 - 3.0;
        const double r = dx * std::sqrt(rx * rx + ry * ry + rz * rz + cfg.eps * cfg.eps);
        CHECK(f.phi[grid::SubGrid::interior_index(i, j, k)] == doctest::Approx(-1.5 / r).epsilon(1e-14));
      }
}

TEST_CASE("multipole accuracy improves with smaller theta and with the dipole") {
  std::mt19937_64 rng(77);
  grid::SubGrid target(1, {});
  runtime::Pool pool(1);
  for (int trial = 0; trial < 2; ++trial) {
    const SourceNeighborhood src = fixtures::random_sources(rng, target.dx());
    const auto want = fixtures::direct_sum(src, target.dx(), 0.5);
    double prev = std::numeric_limits<double>::infinity();
    for (double theta : {0.5, 0.34, 0.2}) {
      const auto p1 = multipole_kernel(target, src, GravityConfig{theta, 0.5, 1}, simd::scalar_backend(), pool, 1);
      const auto p0 = multipole_kernel(target, src, GravityConfig{theta, 0.5, 0}, simd::scalar_backend(), pool, 1);
      const double e1 = rel_max_error(p1.phi, want.phi);
      const double e0 = rel_max_error(p0.phi, want.phi);
      CHECK(e1 < prev);
      CHECK(e1 <= e0);
      prev = e1;
    }
  }
}

TEST_CASE("multipole is independent of backend and task count") {
  std::mt19937_64 rng(3);
  grid::SubGrid target(1, {});
  const SourceNeighborhood src = fixtures::random_sources(rng, target.dx());
  runtime::Pool pool(2);
  const GravityConfig cfg;
  const auto base = multipole_kernel(target, src, cfg, simd::scalar_backend(), pool, 1);
  for (const auto& b : simd::available_backends()) {
    for (std::size_t n : {std::size_t{1}, std::size_t{16}}) {
      const auto f = multipole_kernel(target, src, cfg, b, pool, n);
      CHECK(fixtures::same_bits(f.phi, base.phi));
      CHECK(fixtures::same_bits(f.gx, base.gx));
      CHECK(fixtures::same_bits(f.gz, base.gz));
    }
  }
  CHECK_THROWS_AS(multipole_kernel(target, src, cfg, simd::scalar_backend(), pool, 0), std::invalid_argument);
}

TEST_CASE("gather_sources places the target at the centre") {
  grid::Octree tree = grid::build_unigrid(1, [](const grid::CellSite& c) {
    return grid::HydroState{1.0 + c.gi + 16.0 * c.gj + 256.0 * c.gk, 0, 0, 0, 1};
  });
  const grid::LeafId id = tree.leaf_at({1, 0, 1});
  const SourceNeighborhood src = gather_sources(tree, id);
  const double vol = tree.dx() * tree.dx() * tree.dx();
  auto rho_at = [&](int gi, int gj, int gk) {
    auto w = [](int v) { return ((v % 16) + 16) % 16; };
    return (1.0 + w(gi) + 16.0 * w(gj) + 256.0 * w(gk)) * vol;
  };
  for (int k = 0; k < kNeighborhood; k += 5)
    for (int j = 0; j < kNeighborhood; j += 3)
      for (int i = 0; i < kNeighborhood; i += 2) {
        CHECK(src.mass[SourceNeighborhood::index(i, j, k)] == rho_at(8 + i - 8, 0 + j - 8, 8 + k - 8));
      }
}
