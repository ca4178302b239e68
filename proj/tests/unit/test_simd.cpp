#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "octosimd/simd/backend.hpp"
#include "octosimd/simd/dynamic.hpp"
#include "support/conformance.hpp"

using namespace octosimd::simd;

TEST_CASE("backend registry") {
  CHECK(lane_count("scalar") == 1);
  CHECK(lane_count("emulated2") == 2);
  CHECK(lane_count("emulated8") == 8);
  CHECK(lane_count("emulated16") == 16);
  CHECK(available_backends().front().name == "scalar");
  if (has_native_backend()) {
    const std::size_t w = lane_count("native");
    CHECK(w >= 1);
    CHECK((w & (w - 1)) == 0);
  }
  try {
    find_backend("avx9000");
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("emulated4") != std::string::npos);
  }
}

TEST_CASE("splat, load and store") {
  const auto z = splat<Vec<4>>(0.0);
  for (std::size_t i = 0; i < 4; ++i) CHECK(z[i] == 0.0);
  CHECK(splat<Scalar>(2.5)[0] == 2.5);
  const auto m = splat<Vec<8>>(-1.0);
  for (std::size_t i = 0; i < 8; ++i) CHECK(m[i] == -1.0);

  std::vector<double> b{1, 2, 3, 4, 5};
  const auto v = load<Vec<4>>(b, 1);
  CHECK(v[0] == 2);
  CHECK(v[3] == 5);
  store(load<Vec<4>>(b, 0), std::span<double>(b), 0);
  CHECK(b == std::vector<double>{1, 2, 3, 4, 5});

  std::vector<double> dst(6, 0.0);
  store(load<Vec<4>>(b, 1), std::span<double>(dst), 2);
  CHECK(dst == std::vector<double>{0, 0, 2, 3, 4, 5});

  CHECK_THROWS_AS(load<Vec<4>>(b, 2), std::out_of_range);
  CHECK_THROWS_AS(store(v, std::span<double>(b), 3), std::out_of_range);
  CHECK_NOTHROW(load<Vec<2>>(b, 3));
}

TEST_CASE("partial loads and tail masks") {
  const double src[3] = {7, 8, 9};
  const auto v = load_partial<Vec<4>>(src, 3, -1.0);
  CHECK(v[2] == 9);
  CHECK(v[3] == -1.0);
  const auto t = tail_mask<Vec<4>>(3);
  CHECK(t[0]);
  CHECK(t[2]);
  CHECK_FALSE(t[3]);
  double out[4] = {0, 0, 0, 42};
  store_partial(v, out, 3);
  CHECK(out[3] == 42);
}

TEST_CASE("elementwise examples") {
  const Vec<4> sq(std::array<double, 4>{4, 9, 16, 25});
  const auto r = sqrt(sq);
  CHECK(r[0] == 2);
  CHECK(r[3] == 5);
  const auto f = fma(Vec<2>(2.0), Vec<2>(3.0), Vec<2>(1.0));
  CHECK(f[0] == 7);
  CHECK(f[1] == 7);
  const Vec<2> a(std::array<double, 2>{1, 5}), b(std::array<double, 2>{4, 0});
  const auto mn = min(a, b);
  CHECK(mn[0] == 1);
  CHECK(mn[1] == 0);
  const auto lt = cmp_lt(a, b);
  CHECK(lt[0]);
  CHECK_FALSE(lt[1]);
  CHECK(all(mask_or(lt, mask_not(lt))));
  CHECK(none(cmp_lt(a, a)));

  const auto inf = Vec<2>(1.0) / Vec<2>(0.0);
  CHECK(std::isinf(inf[0]));
  CHECK(std::isnan(sqrt(Vec<2>(-1.0))[1]));
}

TEST_CASE("choose and reductions") {
  const Vec<4> a(std::array<double, 4>{1, 2, 3, 4}), b(std::array<double, 4>{5, 6, 7, 8});
  const Mask<4> m(std::array<bool, 4>{true, false, true, false});
  const auto c = choose(m, a, b);
  CHECK(c[0] == 1);
  CHECK(c[1] == 6);
  CHECK(c[2] == 3);
  CHECK(c[3] == 8);
  CHECK(choose(Mask<4>(true), a, b)[1] == 2);
  CHECK(choose(Mask<4>(false), a, b)[1] == 6);
  CHECK(reduce_sum(a) == 10);
  CHECK(reduce_max(Vec<8>(3.25)) == 3.25);
  CHECK(reduce_min(Vec<4>(std::array<double, 4>{3, -1, 2, 7})) == -1);
}

TEST_CASE("every backend matches scalar lane by lane") {
  for (const auto& backend : available_backends()) {
    CAPTURE(backend.name);
    for (const auto& r : fixtures::simd_conformance(backend, 20000, 0x5eed)) {
      CAPTURE(r.op);
      CHECK(r.lanes_checked >= 20000);
      CHECK(r.mismatches == 0);
    }
  }
}

TEST_CASE("mask truth tables") {
  for (const auto& backend : available_backends()) {
    CAPTURE(backend.name);
    CHECK(fixtures::mask_truth_table_failures(backend) == 0);
  }
}

TEST_CASE("reduce_sum is lane ordered") {
  // 1e16 + 1 - 1e16 loses the 1 only when summed left to right.
  const Vec<4> v(std::array<double, 4>{1e16, 1.0, -1e16, 1.0});
  CHECK(reduce_sum(v) == 1.0);
}

TEST_CASE("runtime-width values") {
  const Backend& e4 = find_backend("emulated4");
  const Backend& e2 = find_backend("emulated2");
  const DynVec a(e4, {1, 5, 3, 4});
  const DynVec b(e4, {4, 0, 3, 1});
  CHECK(apply(BinaryOp::min, a, b).lanes() == std::vector<double>{1, 0, 3, 1});
  CHECK(compare(CompareOp::lt, a, b).lanes() == std::vector<bool>{true, false, false, false});
  CHECK(reduce_sum(a) == 13);
  CHECK_THROWS_AS(DynVec(e4, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(apply(BinaryOp::add, a, DynVec::splat(e2, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(choose(compare(CompareOp::lt, a, b), a, DynVec::splat(e2, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(parse_binary_op("pow"), std::invalid_argument);

  std::vector<double> xs(11), ys(11);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = static_cast<double>(i) * 0.5 - 2.0;
    ys[i] = 1.0 / (1.0 + i);
  }
  for (const auto& backend : available_backends()) {
    const auto got = apply_array(BinaryOp::max, backend, xs, ys);
    const auto want = apply_array(BinaryOp::max, scalar_backend(), xs, ys);
    CHECK(fixtures::same_bits(got, want));
    CHECK(fixtures::same_bits(fma_array(backend, xs, ys, xs), fma_array(scalar_backend(), xs, ys, xs)));
  }
}
