#pragma once

// Runtime-typed view of the SIMD layer, keyed by backend name. Used by the
// Python module and anywhere the width is only known at run time. Mixing
// operands of different backends raises std::invalid_argument.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "octosimd/simd/backend.hpp"

namespace octosimd::simd {

enum class UnaryOp { sqrt, abs, neg };
enum class BinaryOp { add, sub, mul, div, min, max, copysign };
enum class CompareOp { lt, le, gt, ge, eq };

UnaryOp parse_unary_op(std::string_view name);
BinaryOp parse_binary_op(std::string_view name);
CompareOp parse_compare_op(std::string_view name);

class DynMask {
 public:
  DynMask(const Backend& backend, std::vector<bool> lanes);

  const Backend& backend() const { return *backend_; }
  std::size_t width() const { return lanes_.size(); }
  bool operator[](std::size_t i) const { return lanes_[i]; }
  const std::vector<bool>& lanes() const { return lanes_; }

 private:
  const Backend* backend_;
  std::vector<bool> lanes_;
};

class DynVec {
 public:
  DynVec(const Backend& backend, std::vector<double> lanes);

  static DynVec splat(const Backend& backend, double x);
  static DynVec load(const Backend& backend, std::span<const double> buffer, std::size_t offset);
  void store(std::span<double> buffer, std::size_t offset) const;

  const Backend& backend() const { return *backend_; }
  std::size_t width() const { return lanes_.size(); }
  double operator[](std::size_t i) const { return lanes_[i]; }
  const std::vector<double>& lanes() const { return lanes_; }

 private:
  const Backend* backend_;
  std::vector<double> lanes_;
};

DynVec apply(UnaryOp op, const DynVec& a);
DynVec apply(BinaryOp op, const DynVec& a, const DynVec& b);
DynVec fma(const DynVec& a, const DynVec& b, const DynVec& c);
DynMask compare(CompareOp op, const DynVec& a, const DynVec& b);
DynVec choose(const DynMask& m, const DynVec& a, const DynVec& b);

DynMask mask_and(const DynMask& a, const DynMask& b);
DynMask mask_or(const DynMask& a, const DynMask& b);
DynMask mask_not(const DynMask& a);
bool any(const DynMask& m);
bool all(const DynMask& m);
bool none(const DynMask& m);

double reduce_sum(const DynVec& v);
double reduce_min(const DynVec& v);
double reduce_max(const DynVec& v);

// Whole-array forms: process arrays of any length W lanes at a time, with a
// masked tail. All inputs must have equal length.
std::vector<double> apply_array(UnaryOp op, const Backend& backend, std::span<const double> a);
std::vector<double> apply_array(BinaryOp op, const Backend& backend, std::span<const double> a,
                                std::span<const double> b);
std::vector<double> fma_array(const Backend& backend, std::span<const double> a, std::span<const double> b,
                              std::span<const double> c);
std::vector<bool> compare_array(CompareOp op, const Backend& backend, std::span<const double> a,
                                std::span<const double> b);
std::vector<double> choose_array(const Backend& backend, const std::vector<bool>& m, std::span<const double> a,
                                 std::span<const double> b);

}  // namespace octosimd::simd
