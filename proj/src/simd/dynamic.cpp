#include "octosimd/simd/dynamic.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace octosimd::simd {

namespace {

void require_same(const Backend& a, const Backend& b) {
  if (!(a == b)) {
    throw std::invalid_argument("mixed-width operands: " + a.name + " (W=" + std::to_string(a.width) + ") vs " +
                                b.name + " (W=" + std::to_string(b.width) + ")");
  }
}

void require_length(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw std::invalid_argument("array operands differ in length: " + std::to_string(expected) + " vs " +
                                std::to_string(got));
  }
}

template <class V>
typename V::mask_type to_mask(const std::vector<bool>& lanes, std::size_t offset = 0) {
  typename V::mask_type m(false);
  for (std::size_t i = 0; i < V::width && offset + i < lanes.size(); ++i) m.set(i, lanes[offset + i]);
  return m;
}

template <class V>
V unary(UnaryOp op, const V& a) {
  switch (op) {
    case UnaryOp::sqrt: return sqrt(a);
    case UnaryOp::abs: return abs(a);
    case UnaryOp::neg: return -a;
  }
  throw std::logic_error("unhandled unary op");
}

template <class V>
V binary(BinaryOp op, const V& a, const V& b) {
  switch (op) {
    case BinaryOp::add: return a + b;
    case BinaryOp::sub: return a - b;
    case BinaryOp::mul: return a * b;
    case BinaryOp::div: return a / b;
    case BinaryOp::min: return min(a, b);
    case BinaryOp::max: return max(a, b);
    case BinaryOp::copysign: return copysign(a, b);
  }
  throw std::logic_error("unhandled binary op");
}

template <class V>
typename V::mask_type comparison(CompareOp op, const V& a, const V& b) {
  switch (op) {
    case CompareOp::lt: return a < b;
    case CompareOp::le: return a <= b;
    case CompareOp::gt: return a > b;
    case CompareOp::ge: return a >= b;
    case CompareOp::eq: return a == b;
  }
  throw std::logic_error("unhandled compare op");
}

template <class V>
V lanes_of(const DynVec& v) {
  return V::load_unchecked(v.lanes().data());
}

template <class V>
DynVec wrap(const Backend& backend, const V& v) {
  std::vector<double> lanes(V::width);
  v.store_unchecked(lanes.data());
  return DynVec(backend, std::move(lanes));
}

template <class M>
DynMask wrap_mask(const Backend& backend, const M& m) {
  std::vector<bool> lanes(M::width);
  for (std::size_t i = 0; i < M::width; ++i) lanes[i] = m[i];
  return DynMask(backend, std::move(lanes));
}

// Runs `body(offset, active)` over [0, n) in steps of W.
template <class V, class Body>
void for_each_chunk(std::size_t n, Body&& body) {
  for (std::size_t off = 0; off < n; off += V::width) body(off, std::min(V::width, n - off));
}

}  // namespace

UnaryOp parse_unary_op(std::string_view name) {
  if (name == "sqrt") return UnaryOp::sqrt;
  if (name == "abs") return UnaryOp::abs;
  if (name == "neg") return UnaryOp::neg;
  throw std::invalid_argument("unknown unary op '" + std::string(name) + "'");
}

BinaryOp parse_binary_op(std::string_view name) {
  if (name == "add") return BinaryOp::add;
  if (name == "sub") return BinaryOp::sub;
  if (name == "mul") return BinaryOp::mul;
  if (name == "div") return BinaryOp::div;
  if (name == "min") return BinaryOp::min;
  if (name == "max") return BinaryOp::max;
  if (name == "copysign") return BinaryOp::copysign;
  throw std::invalid_argument("unknown binary op '" + std::string(name) + "'");
}

CompareOp parse_compare_op(std::string_view name) {
  if (name == "lt") return CompareOp::lt;
  if (name == "le") return CompareOp::le;
  if (name == "gt") return CompareOp::gt;
  if (name == "ge") return CompareOp::ge;
  if (name == "eq") return CompareOp::eq;
  throw std::invalid_argument("unknown comparison '" + std::string(name) + "'");
}

DynMask::DynMask(const Backend& backend, std::vector<bool> lanes) : backend_(&backend), lanes_(std::move(lanes)) {
  require_length(backend.width, lanes_.size());
}

DynVec::DynVec(const Backend& backend, std::vector<double> lanes) : backend_(&backend), lanes_(std::move(lanes)) {
  require_length(backend.width, lanes_.size());
}

DynVec DynVec::splat(const Backend& backend, double x) { return DynVec(backend, std::vector<double>(backend.width, x)); }

DynVec DynVec::load(const Backend& backend, std::span<const double> buffer, std::size_t offset) {
  detail::check_range(buffer.size(), offset, backend.width);
  return DynVec(backend, std::vector<double>(buffer.begin() + offset, buffer.begin() + offset + backend.width));
}

void DynVec::store(std::span<double> buffer, std::size_t offset) const {
  detail::check_range(buffer.size(), offset, width());
  std::copy(lanes_.begin(), lanes_.end(), buffer.begin() + offset);
}

DynVec apply(UnaryOp op, const DynVec& a) {
  return with_backend(a.backend(), [&]<class V>() { return wrap(a.backend(), unary(op, lanes_of<V>(a))); });
}

DynVec apply(BinaryOp op, const DynVec& a, const DynVec& b) {
  require_same(a.backend(), b.backend());
  return with_backend(a.backend(),
                      [&]<class V>() { return wrap(a.backend(), binary(op, lanes_of<V>(a), lanes_of<V>(b))); });
}

DynVec fma(const DynVec& a, const DynVec& b, const DynVec& c) {
  require_same(a.backend(), b.backend());
  require_same(a.backend(), c.backend());
  return with_backend(a.backend(), [&]<class V>() {
    return wrap(a.backend(), fma(lanes_of<V>(a), lanes_of<V>(b), lanes_of<V>(c)));
  });
}

DynMask compare(CompareOp op, const DynVec& a, const DynVec& b) {
  require_same(a.backend(), b.backend());
  return with_backend(a.backend(), [&]<class V>() {
    return wrap_mask(a.backend(), comparison(op, lanes_of<V>(a), lanes_of<V>(b)));
  });
}

DynVec choose(const DynMask& m, const DynVec& a, const DynVec& b) {
  require_same(m.backend(), a.backend());
  require_same(a.backend(), b.backend());
  return with_backend(a.backend(), [&]<class V>() {
    return wrap(a.backend(), choose(to_mask<V>(m.lanes()), lanes_of<V>(a), lanes_of<V>(b)));
  });
}

DynMask mask_and(const DynMask& a, const DynMask& b) {
  require_same(a.backend(), b.backend());
  return with_backend(a.backend(), [&]<class V>() {
    return wrap_mask(a.backend(), to_mask<V>(a.lanes()) & to_mask<V>(b.lanes()));
  });
}

DynMask mask_or(const DynMask& a, const DynMask& b) {
  require_same(a.backend(), b.backend());
  return with_backend(a.backend(), [&]<class V>() {
    return wrap_mask(a.backend(), to_mask<V>(a.lanes()) | to_mask<V>(b.lanes()));
  });
}

DynMask mask_not(const DynMask& a) {
  return with_backend(a.backend(), [&]<class V>() { return wrap_mask(a.backend(), !to_mask<V>(a.lanes())); });
}

bool any(const DynMask& m) {
  return with_backend(m.backend(), [&]<class V>() { return any(to_mask<V>(m.lanes())); });
}
bool all(const DynMask& m) {
  return with_backend(m.backend(), [&]<class V>() { return all(to_mask<V>(m.lanes())); });
}
bool none(const DynMask& m) {
  return with_backend(m.backend(), [&]<class V>() { return none(to_mask<V>(m.lanes())); });
}

double reduce_sum(const DynVec& v) {
  return with_backend(v.backend(), [&]<class V>() { return reduce_sum(lanes_of<V>(v)); });
}
double reduce_min(const DynVec& v) {
  return with_backend(v.backend(), [&]<class V>() { return reduce_min(lanes_of<V>(v)); });
}
double reduce_max(const DynVec& v) {
  return with_backend(v.backend(), [&]<class V>() { return reduce_max(lanes_of<V>(v)); });
}

std::vector<double> apply_array(UnaryOp op, const Backend& backend, std::span<const double> a) {
  std::vector<double> out(a.size());
  with_backend(backend, [&]<class V>() {
    for_each_chunk<V>(a.size(), [&](std::size_t off, std::size_t active) {
      store_partial(unary(op, load_partial<V>(a.data() + off, active)), out.data() + off, active);
    });
  });
  return out;
}

std::vector<double> apply_array(BinaryOp op, const Backend& backend, std::span<const double> a,
                                std::span<const double> b) {
  require_length(a.size(), b.size());
  std::vector<double> out(a.size());
  with_backend(backend, [&]<class V>() {
    for_each_chunk<V>(a.size(), [&](std::size_t off, std::size_t active) {
      auto r = binary(op, load_partial<V>(a.data() + off, active), load_partial<V>(b.data() + off, active));
      store_partial(r, out.data() + off, active);
    });
  });
  return out;
}

std::vector<double> fma_array(const Backend& backend, std::span<const double> a, std::span<const double> b,
                              std::span<const double> c) {
  require_length(a.size(), b.size());
  require_length(a.size(), c.size());
  std::vector<double> out(a.size());
  with_backend(backend, [&]<class V>() {
    for_each_chunk<V>(a.size(), [&](std::size_t off, std::size_t active) {
      auto r = fma(load_partial<V>(a.data() + off, active), load_partial<V>(b.data() + off, active),
                   load_partial<V>(c.data() + off, active));
      store_partial(r, out.data() + off, active);
    });
  });
  return out;
}

std::vector<bool> compare_array(CompareOp op, const Backend& backend, std::span<const double> a,
                                std::span<const double> b) {
  require_length(a.size(), b.size());
  std::vector<bool> out(a.size());
  with_backend(backend, [&]<class V>() {
    for_each_chunk<V>(a.size(), [&](std::size_t off, std::size_t active) {
      auto m = comparison(op, load_partial<V>(a.data() + off, active), load_partial<V>(b.data() + off, active));
      for (std::size_t i = 0; i < active; ++i) out[off + i] = m[i];
    });
  });
  return out;
}

std::vector<double> choose_array(const Backend& backend, const std::vector<bool>& m, std::span<const double> a,
                                 std::span<const double> b) {
  require_length(a.size(), b.size());
  require_length(a.size(), m.size());
  std::vector<double> out(a.size());
  with_backend(backend, [&]<class V>() {
    for_each_chunk<V>(a.size(), [&](std::size_t off, std::size_t active) {
      auto r = choose(to_mask<V>(m, off), load_partial<V>(a.data() + off, active),
                      load_partial<V>(b.data() + off, active));
      store_partial(r, out.data() + off, active);
    });
  });
  return out;
}

}  // namespace octosimd::simd
