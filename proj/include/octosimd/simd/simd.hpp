#pragma once

// Width-generic vocabulary shared by every backend. Kernels are written
// against a vector type V (Vec<W> or NativeVec) and only use what is here.

#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "octosimd/simd/native.hpp"
#include "octosimd/simd/vec.hpp"

namespace octosimd::simd {

template <class V>
concept SimdVector = requires(const V& a, const typename V::mask_type& m, const double* p, double* q) {
  { V::width } -> std::convertible_to<std::size_t>;
  { a + a } -> std::same_as<V>;
  { a * a } -> std::same_as<V>;
  { a < a } -> std::same_as<typename V::mask_type>;
  { choose(m, a, a) } -> std::same_as<V>;
  { reduce_sum(a) } -> std::same_as<double>;
  { V::load_unchecked(p) } -> std::same_as<V>;
  { a.store_unchecked(q) };
};

template <SimdVector V>
V splat(double x) {
  return V(x);
}

namespace detail {
inline void check_range(std::size_t size, std::size_t offset, std::size_t count) {
  if (offset > size || count > size - offset) {
    throw std::out_of_range("simd access of " + std::to_string(count) + " lanes at offset " +
                            std::to_string(offset) + " exceeds buffer of " + std::to_string(size));
  }
}
}  // namespace detail

template <SimdVector V>
V load(std::span<const double> buffer, std::size_t offset) {
  detail::check_range(buffer.size(), offset, V::width);
  return V::load_unchecked(buffer.data() + offset);
}

template <SimdVector V>
void store(const V& v, std::span<double> buffer, std::size_t offset) {
  detail::check_range(buffer.size(), offset, V::width);
  v.store_unchecked(buffer.data() + offset);
}

// Loads active lanes only; inactive lanes take `fill`. Bounds are checked
// against the active lanes, so a masked tail may sit at the end of a buffer.
template <SimdVector V>
V load_masked(std::span<const double> buffer, std::size_t offset, const typename V::mask_type& m,
              double fill = 0.0) {
  V r(fill);
  for (std::size_t i = 0; i < V::width; ++i) {
    if (m[i]) {
      detail::check_range(buffer.size(), offset + i, 1);
      r.set(i, buffer[offset + i]);
    }
  }
  return r;
}

template <SimdVector V>
void store_masked(const V& v, std::span<double> buffer, std::size_t offset, const typename V::mask_type& m) {
  for (std::size_t i = 0; i < V::width; ++i) {
    if (m[i]) {
      detail::check_range(buffer.size(), offset + i, 1);
      buffer[offset + i] = v[i];
    }
  }
}

// Unchecked variants for kernel inner loops, where the index arithmetic is
// validated once per row rather than per lane.
template <SimdVector V>
V load_partial(const double* p, std::size_t active, double fill = 0.0) {
  if (active == V::width) return V::load_unchecked(p);
  V r(fill);
  for (std::size_t i = 0; i < active; ++i) r.set(i, p[i]);
  return r;
}

template <SimdVector V>
void store_partial(const V& v, double* p, std::size_t active) {
  if (active == V::width) {
    v.store_unchecked(p);
    return;
  }
  for (std::size_t i = 0; i < active; ++i) p[i] = v[i];
}

// Mask selecting lanes [0, active).
template <SimdVector V>
typename V::mask_type tail_mask(std::size_t active) {
  return V::lane_index() < V(static_cast<double>(active));
}

template <SimdVector V> auto cmp_lt(const V& a, const V& b) { return a < b; }
template <SimdVector V> auto cmp_le(const V& a, const V& b) { return a <= b; }
template <SimdVector V> auto cmp_gt(const V& a, const V& b) { return a > b; }
template <SimdVector V> auto cmp_ge(const V& a, const V& b) { return a >= b; }
template <SimdVector V> auto cmp_eq(const V& a, const V& b) { return a == b; }

template <class M> M mask_and(const M& a, const M& b) { return a & b; }
template <class M> M mask_or(const M& a, const M& b) { return a | b; }
template <class M> M mask_not(const M& a) { return !a; }

}  // namespace octosimd::simd
