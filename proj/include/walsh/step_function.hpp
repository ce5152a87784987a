#pragma once

// Finite-resolution functions on the dyadic group. A function measurable
// with respect to the depth-N cosets is stored as 2^N values; index i encodes
// the coset whose coordinates x_0 .. x_{N-1} are the bits of i with x_0 the
// most significant bit, so every coset I_n(x) is a contiguous index range.

#include "walsh/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace walsh {

inline constexpr unsigned kMaxResolution = 30;

namespace detail {

inline void require_resolution(unsigned resolution) {
  if (resolution > kMaxResolution)
    throw std::out_of_range("resolution " + std::to_string(resolution) + " exceeds the cap of " +
                            std::to_string(kMaxResolution));
}

}  // namespace detail

/// 2^N exact dyadic values sharing one denominator 2^exponent. The shared
/// exponent is kept minimal, so equal arrays have equal representations.
class DyadicArray {
 public:
  DyadicArray() : DyadicArray(0) {}
  explicit DyadicArray(unsigned resolution) : resolution_(resolution) {
    detail::require_resolution(resolution);
    numerators_.assign(std::size_t{1} << resolution, BigInt(0));
  }
  DyadicArray(unsigned resolution, std::vector<BigInt> numerators, unsigned exponent)
      : resolution_(resolution), exponent_(exponent), numerators_(std::move(numerators)) {
    detail::require_resolution(resolution);
    if (numerators_.size() != (std::size_t{1} << resolution))
      throw std::invalid_argument("value count " + std::to_string(numerators_.size()) + " does not match 2^" +
                                  std::to_string(resolution));
    normalize();
  }

  unsigned resolution() const { return resolution_; }
  std::size_t size() const { return numerators_.size(); }
  unsigned exponent() const { return exponent_; }
  std::span<const BigInt> numerators() const { return numerators_; }

  DyadicRational value(std::size_t i) const { return DyadicRational(numerators_.at(i), exponent_); }
  DyadicRational operator[](std::size_t i) const { return value(i); }
  std::vector<DyadicRational> values() const {
    std::vector<DyadicRational> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(value(i));
    return out;
  }

  /// Numerators rescaled to a common exponent at least exponent().
  std::vector<BigInt> numerators_at(unsigned exponent) const {
    if (exponent < exponent_) throw std::invalid_argument("numerators_at: exponent below shared exponent");
    std::vector<BigInt> out(numerators_.begin(), numerators_.end());
    if (exponent != exponent_)
      for (BigInt& v : out) v <<= (exponent - exponent_);
    return out;
  }

  BigInt max_abs_numerator() const {
    BigInt m = 0;
    for (const BigInt& v : numerators_) m = std::max(m, BigInt(boost::multiprecision::abs(v)));
    return m;
  }

  bool is_zero() const {
    return std::all_of(numerators_.begin(), numerators_.end(), [](const BigInt& v) { return v.is_zero(); });
  }

  friend bool operator==(const DyadicArray&, const DyadicArray&) = default;

 protected:
  void normalize() {
    unsigned shift = exponent_;
    for (const BigInt& v : numerators_) {
      if (shift == 0) break;
      if (!v.is_zero()) shift = std::min<unsigned>(shift, static_cast<unsigned>(boost::multiprecision::lsb(boost::multiprecision::abs(v))));
    }
    if (is_zero()) shift = exponent_;
    if (shift == 0) return;
    for (BigInt& v : numerators_) v >>= shift;
    exponent_ -= shift;
  }

  unsigned resolution_ = 0;
  unsigned exponent_ = 0;
  std::vector<BigInt> numerators_;
};

/// A function on G measurable with respect to the depth-N cosets.
class StepFunction : public DyadicArray {
 public:
  using DyadicArray::DyadicArray;

  static StepFunction constant(unsigned resolution, const DyadicRational& c) {
    return StepFunction(resolution, std::vector<BigInt>(std::size_t{1} << resolution, c.numerator()), c.exponent());
  }

  static StepFunction from_values(unsigned resolution, std::span<const DyadicRational> values) {
    unsigned e = 0;
    for (const auto& v : values) e = std::max(e, v.exponent());
    std::vector<BigInt> nums;
    nums.reserve(values.size());
    for (const auto& v : values) nums.push_back(v.numerator_at(e));
    return StepFunction(resolution, std::move(nums), e);
  }

  template <std::integral I>
  static StepFunction from_integers(unsigned resolution, std::span<const I> numerators, unsigned exponent = 0) {
    std::vector<BigInt> nums(numerators.begin(), numerators.end());
    return StepFunction(resolution, std::move(nums), exponent);
  }

  /// The same function at a finer resolution: each value is repeated 2^(N'-N) times.
  StepFunction refined(unsigned resolution) const {
    if (resolution < resolution_) throw std::invalid_argument("refined: target resolution below current resolution");
    detail::require_resolution(resolution);
    const unsigned d = resolution - resolution_;
    std::vector<BigInt> nums;
    nums.reserve(std::size_t{1} << resolution);
    for (const BigInt& v : numerators_)
      for (std::size_t r = 0; r < (std::size_t{1} << d); ++r) nums.push_back(v);
    return StepFunction(resolution, std::move(nums), exponent_);
  }

  /// Elementwise |f|.
  StepFunction abs() const {
    std::vector<BigInt> nums;
    nums.reserve(size());
    for (const BigInt& v : numerators_) nums.push_back(boost::multiprecision::abs(v));
    return StepFunction(resolution_, std::move(nums), exponent_);
  }

  StepFunction scaled(const DyadicRational& c) const {
    std::vector<BigInt> nums;
    nums.reserve(size());
    for (const BigInt& v : numerators_) nums.push_back(v * c.numerator());
    return StepFunction(resolution_, std::move(nums), exponent_ + c.exponent());
  }

  friend StepFunction operator+(const StepFunction& a, const StepFunction& b) { return combine(a, b, false); }
  friend StepFunction operator-(const StepFunction& a, const StepFunction& b) { return combine(a, b, true); }

  /// Equality as functions on G, independent of the stored resolution.
  friend bool same_function(const StepFunction& a, const StepFunction& b) {
    const unsigned n = std::max(a.resolution(), b.resolution());
    return a.refined(n) == b.refined(n);
  }

 private:
  static StepFunction combine(const StepFunction& a, const StepFunction& b, bool subtract) {
    const unsigned n = std::max(a.resolution(), b.resolution());
    const unsigned e = std::max(a.exponent(), b.exponent());
    const StepFunction ra = a.refined(n);
    const StepFunction rb = b.refined(n);
    std::vector<BigInt> x = ra.numerators_at(e);
    const std::vector<BigInt> y = rb.numerators_at(e);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (subtract) x[i] -= y[i];
      else x[i] += y[i];
    }
    return StepFunction(n, std::move(x), e);
  }
};

/// A sampled function with values of an arbitrary exact or floating type,
/// e.g. the output of a weighted maximal operator (rational values).
template <class Value>
struct SampledFunction {
  unsigned resolution = 0;
  std::vector<Value> values;

  SampledFunction() = default;
  SampledFunction(unsigned res, std::vector<Value> vals) : resolution(res), values(std::move(vals)) {
    detail::require_resolution(res);
    if (values.size() != (std::size_t{1} << res)) throw std::invalid_argument("sampled function: size mismatch");
  }
  std::size_t size() const { return values.size(); }

  SampledFunction refined(unsigned res) const {
    if (res < resolution) throw std::invalid_argument("refined: target resolution below current resolution");
    std::vector<Value> out;
    out.reserve(std::size_t{1} << res);
    for (const Value& v : values)
      for (std::size_t r = 0; r < (std::size_t{1} << (res - resolution)); ++r) out.push_back(v);
    return SampledFunction(res, std::move(out));
  }
};

using RationalFunction = SampledFunction<Rational>;
using RealFunction = SampledFunction<double>;

inline RationalFunction to_rational_function(const StepFunction& f) {
  std::vector<Rational> vals;
  vals.reserve(f.size());
  const BigInt den = pow2(f.exponent());
  for (const BigInt& v : f.numerators()) vals.emplace_back(v, den);
  return RationalFunction(f.resolution(), std::move(vals));
}

// Plain-text fixture format: "N=<resolution>" followed by 2^N lines
// "<numerator>/2^<exponent>".

inline void write_step_function(std::ostream& os, const StepFunction& f) {
  os << "N=" << f.resolution() << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) os << f.value(i).str() << '\n';
}

inline StepFunction read_step_function(std::istream& is) {
  std::string line;
  auto next = [&]() -> bool {
    while (std::getline(is, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next() || line.rfind("N=", 0) != 0) throw std::invalid_argument("step function file: expected 'N=<resolution>' header");
  unsigned long res = 0;
  try {
    std::size_t used = 0;
    res = std::stoul(line.substr(2), &used);
    if (used != line.size() - 2) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("step function file: malformed header '" + line + "'");
  }
  if (res > kMaxResolution) throw std::out_of_range("step function file: resolution " + std::to_string(res) + " exceeds cap");
  const std::size_t count = std::size_t{1} << res;
  std::vector<DyadicRational> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!next())
      throw std::invalid_argument("step function file: expected " + std::to_string(count) + " values, got " +
                                  std::to_string(i));
    values.push_back(DyadicRational::parse(line));
  }
  if (next()) throw std::invalid_argument("step function file: more than 2^N values");
  return StepFunction::from_values(static_cast<unsigned>(res), values);
}

}  // namespace walsh
