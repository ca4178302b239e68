#pragma once

#include <array>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "octosimd/simd/backend.hpp"
#include "support/fixtures.hpp"

namespace fixtures {

struct OpMismatch {
  std::string op;
  std::size_t lanes_checked = 0;
  std::size_t mismatches = 0;
};

namespace detail {

using octosimd::simd::Scalar;

template <class V>
V lanes_of(const std::vector<double>& xs, std::size_t at) {
  return V::load_unchecked(xs.data() + at);
}

template <class V, class Op, class Ref>
OpMismatch check_value_op(const std::string& name, const std::array<std::vector<double>, 3>& in, Op op, Ref ref) {
  OpMismatch r{name, 0, 0};
  const std::size_t n = in[0].size();
  for (std::size_t at = 0; at + V::width <= n; at += V::width) {
    const V out = op(lanes_of<V>(in[0], at), lanes_of<V>(in[1], at), lanes_of<V>(in[2], at));
    for (std::size_t l = 0; l < V::width; ++l) {
      const Scalar want = ref(Scalar(in[0][at + l]), Scalar(in[1][at + l]), Scalar(in[2][at + l]));
      ++r.lanes_checked;
      if (bits(out[l]) != bits(want[0])) ++r.mismatches;
    }
  }
  return r;
}

template <class V, class Op, class Ref>
OpMismatch check_mask_op(const std::string& name, const std::array<std::vector<double>, 3>& in, Op op, Ref ref) {
  OpMismatch r{name, 0, 0};
  const std::size_t n = in[0].size();
  for (std::size_t at = 0; at + V::width <= n; at += V::width) {
    const auto out = op(lanes_of<V>(in[0], at), lanes_of<V>(in[1], at));
    for (std::size_t l = 0; l < V::width; ++l) {
      const auto want = ref(Scalar(in[0][at + l]), Scalar(in[1][at + l]));
      ++r.lanes_checked;
      if (out[l] != want[0]) ++r.mismatches;
    }
  }
  return r;
}

template <class V, class Op>
OpMismatch check_reduction(const std::string& name, const std::array<std::vector<double>, 3>& in, Op op,
                           double (*fold)(double, double)) {
  OpMismatch r{name, 0, 0};
  const std::size_t n = in[0].size();
  for (std::size_t at = 0; at + V::width <= n; at += V::width) {
    double want = in[0][at];
    for (std::size_t l = 1; l < V::width; ++l) want = fold(want, in[0][at + l]);
    r.lanes_checked += V::width;
    if (bits(op(lanes_of<V>(in[0], at))) != bits(want)) ++r.mismatches;
  }
  return r;
}

template <class V>
std::vector<OpMismatch> conformance_for(std::size_t lanes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = (lanes + V::width - 1) / V::width * V::width;
  std::array<std::vector<double>, 3> in;
  for (auto& v : in) {
    v.resize(n);
    for (auto& x : v) x = any_double(rng);
  }
  // Positive operands for sqrt get a separate stream so most lanes are finite.
  std::array<std::vector<double>, 3> pos = in;
  for (auto& x : pos[0]) x = std::fabs(x);

  std::vector<OpMismatch> out;
  auto val = [&](const std::string& name, auto op, const std::array<std::vector<double>, 3>& src) {
    out.push_back(check_value_op<V>(name, src, op, op));
  };
  val("add", [](auto a, auto b, auto) { return a + b; }, in);
  val("sub", [](auto a, auto b, auto) { return a - b; }, in);
  val("mul", [](auto a, auto b, auto) { return a * b; }, in);
  val("div", [](auto a, auto b, auto) { return a / b; }, in);
  val("neg", [](auto a, auto, auto) { return -a; }, in);
  val("fma", [](auto a, auto b, auto c) { return fma(a, b, c); }, in);
  val("sqrt", [](auto a, auto, auto) { return sqrt(a); }, pos);
  val("sqrt_negative", [](auto a, auto, auto) { return sqrt(a); }, in);
  val("abs", [](auto a, auto, auto) { return abs(a); }, in);
  val("min", [](auto a, auto b, auto) { return min(a, b); }, in);
  val("max", [](auto a, auto b, auto) { return max(a, b); }, in);
  val("copysign", [](auto a, auto b, auto) { return copysign(a, b); }, in);
  val("choose", [](auto a, auto b, auto c) { return choose(c < a, a, b); }, in);

  auto cmp = [&](const std::string& name, auto op) { out.push_back(check_mask_op<V>(name, in, op, op)); };
  cmp("lt", [](auto a, auto b) { return a < b; });
  cmp("le", [](auto a, auto b) { return a <= b; });
  cmp("gt", [](auto a, auto b) { return a > b; });
  cmp("ge", [](auto a, auto b) { return a >= b; });
  cmp("eq", [](auto a, auto b) { return a == b; });

  out.push_back(check_reduction<V>("reduce_sum", in, [](const V& v) { return reduce_sum(v); },
                                   [](double a, double b) { return octosimd::simd::ordered_add(a, b); }));
  out.push_back(check_reduction<V>("reduce_min", in, [](const V& v) { return reduce_min(v); },
                                   [](double a, double b) { return b < a ? b : a; }));
  out.push_back(check_reduction<V>("reduce_max", in, [](const V& v) { return reduce_max(v); },
                                   [](double a, double b) { return a < b ? b : a; }));
  return out;
}

template <class V>
V pattern(unsigned bits_set) {
  V r(0.0);
  for (std::size_t l = 0; l < V::width; ++l) r.set(l, (bits_set >> l) & 1u ? 1.0 : 0.0);
  return r;
}

// Every pair of masks: and/or/not/any/all/none and choose.
template <class V>
std::size_t mask_truth_table_failures() {
  const unsigned combos = 1u << V::width;
  std::size_t failures = 0;
  const V half(0.5);
  const V a = V::lane_index() + V(10.0);
  const V b = V::lane_index() + V(20.0);
  for (unsigned x = 0; x < combos; ++x) {
    const auto mx = pattern<V>(x) > half;
    const auto nx = !mx;
    bool any_ = false, all_ = true;
    const V picked = choose(mx, a, b);
    for (std::size_t l = 0; l < V::width; ++l) {
      const bool bx = (x >> l) & 1u;
      any_ = any_ || bx;
      all_ = all_ && bx;
      if (mx[l] != bx || nx[l] == bx) ++failures;
      if (picked[l] != (bx ? a[l] : b[l])) ++failures;
    }
    if (any(mx) != any_ || all(mx) != all_ || none(mx) == any_) ++failures;
    for (unsigned y = 0; y < combos; ++y) {
      const auto my = pattern<V>(y) > half;
      const auto band = mx & my;
      const auto bor = mx | my;
      for (std::size_t l = 0; l < V::width; ++l) {
        const bool bx = (x >> l) & 1u, by = (y >> l) & 1u;
        if (band[l] != (bx && by) || bor[l] != (bx || by)) ++failures;
      }
    }
  }
  return failures;
}

}  // namespace detail

inline std::vector<OpMismatch> simd_conformance(const octosimd::simd::Backend& backend, std::size_t lanes,
                                                std::uint64_t seed) {
  return octosimd::simd::with_backend(backend,
                                      [&]<class V>() { return detail::conformance_for<V>(lanes, seed); });
}

inline std::size_t mask_truth_table_failures(const octosimd::simd::Backend& backend) {
  return octosimd::simd::with_backend(backend, [&]<class V>() -> std::size_t {
    if constexpr (V::width <= 8) {
      return detail::mask_truth_table_failures<V>();
    } else {
      return 0;
    }
  });
}

}  // namespace fixtures
