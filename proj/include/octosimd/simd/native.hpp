#pragma once

// Native backend: std::experimental::native_simd<double>, whose width is
// whatever the target ISA offers (2 for SSE2, 4 for AVX2, 8 for AVX-512).
// Only built when <experimental/simd> is available.

#if defined(OCTOSIMD_HAVE_NATIVE)

#include <cmath>
#include <cstddef>
#include <experimental/simd>

#include "octosimd/simd/vec.hpp"

namespace octosimd::simd {

namespace stdx = std::experimental;

class NativeMask {
 public:
  using storage_type = stdx::native_simd_mask<double>;
  static constexpr std::size_t width = storage_type::size();

  NativeMask() = default;
  explicit NativeMask(bool b) : m_(b) {}
  explicit NativeMask(const storage_type& m) : m_(m) {}

  static constexpr std::size_t size() { return width; }

  bool operator[](std::size_t i) const { return m_[i]; }
  void set(std::size_t i, bool b) { m_[i] = b; }
  const storage_type& raw() const { return m_; }

  friend NativeMask operator&(const NativeMask& a, const NativeMask& b) { return NativeMask(a.m_ && b.m_); }
  friend NativeMask operator|(const NativeMask& a, const NativeMask& b) { return NativeMask(a.m_ || b.m_); }
  friend NativeMask operator!(const NativeMask& a) { return NativeMask(!a.m_); }

  friend bool any(const NativeMask& m) { return stdx::any_of(m.m_); }
  friend bool all(const NativeMask& m) { return stdx::all_of(m.m_); }
  friend bool none(const NativeMask& m) { return stdx::none_of(m.m_); }

 private:
  storage_type m_{};
};

class NativeVec {
 public:
  using storage_type = stdx::native_simd<double>;
  using mask_type = NativeMask;
  static constexpr std::size_t width = storage_type::size();

  NativeVec() : v_(0.0) {}
  explicit NativeVec(double x) : v_(x) {}
  explicit NativeVec(const storage_type& v) : v_(v) {}

  static constexpr std::size_t size() { return width; }

  static NativeVec load_unchecked(const double* p) {
    NativeVec r;
    r.v_.copy_from(p, stdx::element_aligned);
    return r;
  }
  void store_unchecked(double* p) const { v_.copy_to(p, stdx::element_aligned); }

  static NativeVec lane_index() {
    return NativeVec(storage_type([](auto i) { return static_cast<double>(decltype(i)::value); }));
  }

  double operator[](std::size_t i) const { return v_[i]; }
  void set(std::size_t i, double x) { v_[i] = x; }

  friend NativeVec operator+(const NativeVec& a, const NativeVec& b) { return NativeVec(a.v_ + b.v_); }
  friend NativeVec operator-(const NativeVec& a, const NativeVec& b) { return NativeVec(a.v_ - b.v_); }
  friend NativeVec operator*(const NativeVec& a, const NativeVec& b) { return NativeVec(a.v_ * b.v_); }
  friend NativeVec operator/(const NativeVec& a, const NativeVec& b) { return NativeVec(a.v_ / b.v_); }
  friend NativeVec operator-(const NativeVec& a) { return NativeVec(-a.v_); }

  NativeVec& operator+=(const NativeVec& o) { return *this = *this + o; }
  NativeVec& operator-=(const NativeVec& o) { return *this = *this - o; }
  NativeVec& operator*=(const NativeVec& o) { return *this = *this * o; }

  friend NativeVec fma(const NativeVec& a, const NativeVec& b, const NativeVec& c) {
    return NativeVec(stdx::fma(a.v_, b.v_, c.v_));
  }
  friend NativeVec sqrt(const NativeVec& a) { return NativeVec(stdx::sqrt(a.v_)); }
  friend NativeVec abs(const NativeVec& a) { return NativeVec(stdx::abs(a.v_)); }
  // Spelled through masks so signed zeros and NaNs resolve like std::min/max.
  friend NativeVec min(const NativeVec& a, const NativeVec& b) { return choose(b < a, b, a); }
  friend NativeVec max(const NativeVec& a, const NativeVec& b) { return choose(a < b, b, a); }
  friend NativeVec copysign(const NativeVec& a, const NativeVec& b) {
    return NativeVec(stdx::copysign(a.v_, b.v_));
  }

  friend NativeMask operator<(const NativeVec& a, const NativeVec& b) { return NativeMask(a.v_ < b.v_); }
  friend NativeMask operator<=(const NativeVec& a, const NativeVec& b) { return NativeMask(a.v_ <= b.v_); }
  friend NativeMask operator>(const NativeVec& a, const NativeVec& b) { return NativeMask(a.v_ > b.v_); }
  friend NativeMask operator>=(const NativeVec& a, const NativeVec& b) { return NativeMask(a.v_ >= b.v_); }
  friend NativeMask operator==(const NativeVec& a, const NativeVec& b) { return NativeMask(a.v_ == b.v_); }

  friend NativeVec choose(const NativeMask& m, const NativeVec& a, const NativeVec& b) {
    storage_type r = b.v_;
    stdx::where(m.raw(), r) = a.v_;
    return NativeVec(r);
  }

  // stdx::reduce uses a tree order; lane-ascending keeps parity with Vec<W>.
  friend double reduce_sum(const NativeVec& v) {
    double s = v.v_[0];
    for (std::size_t i = 1; i < width; ++i) s = ordered_add(s, v.v_[i]);
    return s;
  }
  friend double reduce_min(const NativeVec& v) {
    double s = v.v_[0];
    for (std::size_t i = 1; i < width; ++i) s = v.v_[i] < s ? double(v.v_[i]) : s;
    return s;
  }
  friend double reduce_max(const NativeVec& v) {
    double s = v.v_[0];
    for (std::size_t i = 1; i < width; ++i) s = s < v.v_[i] ? double(v.v_[i]) : s;
    return s;
  }

 private:
  storage_type v_;
};

}  // namespace octosimd::simd

#endif
