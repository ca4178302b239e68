#pragma once

// Fixed-width data-parallel double vectors and boolean masks.
//
// Vec<1> is the scalar backend; Vec<2..16> are the emulated backends, plain
// lane loops the optimizer is free to vectorize. Every lanewise operation is
// a single IEEE-754 double operation so that any width agrees bit-for-bit
// with the scalar backend.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

namespace octosimd::simd {

// a + b with a as the first operand. When both are NaN, x86 returns the
// first operand's payload, and the compiler would otherwise commute freely.
inline double ordered_add(double a, double b) {
#if defined(__x86_64__) && defined(__SSE2__)
  __asm__("addsd %1, %0" : "+x"(a) : "x"(b));
  return a;
#else
  return a + b;
#endif
}

constexpr bool is_valid_width(std::size_t w) {
  return w == 1 || w == 2 || w == 4 || w == 8 || w == 16;
}

template <std::size_t W>
class Mask {
  static_assert(is_valid_width(W), "lane count must be 1, 2, 4, 8 or 16");

 public:
  static constexpr std::size_t width = W;

  Mask() = default;
  explicit Mask(bool b) { lanes_.fill(b); }
  explicit Mask(const std::array<bool, W>& lanes) : lanes_(lanes) {}

  static constexpr std::size_t size() { return W; }

  bool operator[](std::size_t i) const { return lanes_[i]; }
  void set(std::size_t i, bool b) { lanes_[i] = b; }

  friend Mask operator&(const Mask& a, const Mask& b) {
    Mask r;
    for (std::size_t i = 0; i < W; ++i) r.lanes_[i] = a.lanes_[i] && b.lanes_[i];
    return r;
  }
  friend Mask operator|(const Mask& a, const Mask& b) {
    Mask r;
    for (std::size_t i = 0; i < W; ++i) r.lanes_[i] = a.lanes_[i] || b.lanes_[i];
    return r;
  }
  friend Mask operator!(const Mask& a) {
    Mask r;
    for (std::size_t i = 0; i < W; ++i) r.lanes_[i] = !a.lanes_[i];
    return r;
  }

  friend bool any(const Mask& m) {
    bool r = false;
    for (std::size_t i = 0; i < W; ++i) r = r || m.lanes_[i];
    return r;
  }
  friend bool all(const Mask& m) {
    bool r = true;
    for (std::size_t i = 0; i < W; ++i) r = r && m.lanes_[i];
    return r;
  }
  friend bool none(const Mask& m) { return !any(m); }

 private:
  std::array<bool, W> lanes_{};
};

template <std::size_t W>
class Vec {
  static_assert(is_valid_width(W), "lane count must be 1, 2, 4, 8 or 16");

 public:
  using mask_type = Mask<W>;
  static constexpr std::size_t width = W;

  Vec() = default;
  explicit Vec(double x) { lanes_.fill(x); }
  explicit Vec(const std::array<double, W>& lanes) : lanes_(lanes) {}

  static constexpr std::size_t size() { return W; }

  // Unchecked contiguous load/store; the span overloads below check bounds.
  static Vec load_unchecked(const double* p) {
    Vec r;
    for (std::size_t i = 0; i < W; ++i) r.lanes_[i] = p[i];
    return r;
  }
  void store_unchecked(double* p) const {
    for (std::size_t i = 0; i < W; ++i) p[i] = lanes_[i];
  }

  static Vec lane_index() {
    Vec r;
    for (std::size_t i = 0; i < W; ++i) r.lanes_[i] = static_cast<double>(i);
    return r;
  }

  double operator[](std::size_t i) const { return lanes_[i]; }
  void set(std::size_t i, double x) { lanes_[i] = x; }

  friend Vec operator+(const Vec& a, const Vec& b) { return zip(a, b, [](double x, double y) { return x + y; }); }
  friend Vec operator-(const Vec& a, const Vec& b) { return zip(a, b, [](double x, double y) { return x - y; }); }
  friend Vec operator*(const Vec& a, const Vec& b) { return zip(a, b, [](double x, double y) { return x * y; }); }
  friend Vec operator/(const Vec& a, const Vec& b) { return zip(a, b, [](double x, double y) { return x / y; }); }
  friend Vec operator-(const Vec& a) { return map(a, [](double x) { return -x; }); }

  Vec& operator+=(const Vec& o) { return *this = *this + o; }
  Vec& operator-=(const Vec& o) { return *this = *this - o; }
  Vec& operator*=(const Vec& o) { return *this = *this * o; }

  friend Vec fma(const Vec& a, const Vec& b, const Vec& c) {
    Vec r;
    for (std::size_t i = 0; i < W; ++i) r.lanes_[i] = std::fma(a.lanes_[i], b.lanes_[i], c.lanes_[i]);
    return r;
  }
  friend Vec sqrt(const Vec& a) { return map(a, [](double x) { return std::sqrt(x); }); }
  friend Vec abs(const Vec& a) { return map(a, [](double x) { return std::fabs(x); }); }
  // min/max follow std::min/std::max: the first argument wins ties and NaNs.
  friend Vec min(const Vec& a, const Vec& b) { return zip(a, b, [](double x, double y) { return y < x ? y : x; }); }
  friend Vec max(const Vec& a, const Vec& b) { return zip(a, b, [](double x, double y) { return x < y ? y : x; }); }
  friend Vec copysign(const Vec& a, const Vec& b) {
    return zip(a, b, [](double x, double y) { return std::copysign(x, y); });
  }

  friend mask_type operator<(const Vec& a, const Vec& b) { return cmp(a, b, [](double x, double y) { return x < y; }); }
  friend mask_type operator<=(const Vec& a, const Vec& b) { return cmp(a, b, [](double x, double y) { return x <= y; }); }
  friend mask_type operator>(const Vec& a, const Vec& b) { return cmp(a, b, [](double x, double y) { return x > y; }); }
  friend mask_type operator>=(const Vec& a, const Vec& b) { return cmp(a, b, [](double x, double y) { return x >= y; }); }
  friend mask_type operator==(const Vec& a, const Vec& b) { return cmp(a, b, [](double x, double y) { return x == y; }); }

  friend Vec choose(const mask_type& m, const Vec& a, const Vec& b) {
    Vec r;
    for (std::size_t i = 0; i < W; ++i) r.lanes_[i] = m[i] ? a.lanes_[i] : b.lanes_[i];
    return r;
  }

  // Ascending lane order, so equal-width backends reduce identically.
  friend double reduce_sum(const Vec& v) {
    double s = v.lanes_[0];
    for (std::size_t i = 1; i < W; ++i) s = ordered_add(s, v.lanes_[i]);
    return s;
  }
  friend double reduce_min(const Vec& v) {
    double s = v.lanes_[0];
    for (std::size_t i = 1; i < W; ++i) s = v.lanes_[i] < s ? v.lanes_[i] : s;
    return s;
  }
  friend double reduce_max(const Vec& v) {
    double s = v.lanes_[0];
    for (std::size_t i = 1; i < W; ++i) s = s < v.lanes_[i] ? v.lanes_[i] : s;
    return s;
  }

 private:
  template <class F>
  static Vec map(const Vec& a, F f) {
    Vec r;
    for (std::size_t i = 0; i < W; ++i) r.lanes_[i] = f(a.lanes_[i]);
    return r;
  }
  template <class F>
  static Vec zip(const Vec& a, const Vec& b, F f) {
    Vec r;
    for (std::size_t i = 0; i < W; ++i) r.lanes_[i] = f(a.lanes_[i], b.lanes_[i]);
    return r;
  }
  template <class F>
  static mask_type cmp(const Vec& a, const Vec& b, F f) {
    mask_type r;
    for (std::size_t i = 0; i < W; ++i) r.set(i, f(a.lanes_[i], b.lanes_[i]));
    return r;
  }

  std::array<double, W> lanes_{};
};

using Scalar = Vec<1>;

}  // namespace octosimd::simd
