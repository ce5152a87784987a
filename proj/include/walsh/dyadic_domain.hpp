#pragma once

// Coset geometry and Haar-measure functionals for step functions.
//
// I_n(x) = {y : y_0 = x_0, ..., y_{n-1} = x_{n-1}} has measure 2^-n. With x_0
// stored in the most significant index bit it is the index range
// [anchor * 2^(N-n), (anchor + 1) * 2^(N-n)) at resolution N.

#include "walsh/numeric.hpp"
#include "walsh/step_function.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace walsh {

/// I_n(x) given by its depth and the n-bit prefix x_0 .. x_{n-1} (x_0 most
/// significant), or its complement G \ I_n(x).
struct CosetSelector {
  unsigned depth = 0;
  std::uint64_t anchor = 0;
  bool complement = false;

  static CosetSelector coset(unsigned depth, std::uint64_t anchor = 0) {
    if (depth > 63 || (depth < 64 && anchor >> depth != 0))
      throw std::invalid_argument("coset: anchor does not fit in " + std::to_string(depth) + " bits");
    return {depth, anchor, false};
  }
  static CosetSelector outside(unsigned depth, std::uint64_t anchor = 0) {
    CosetSelector c = coset(depth, anchor);
    c.complement = true;
    return c;
  }

  DyadicRational measure() const {
    const DyadicRational m(BigInt(1), depth);
    return complement ? DyadicRational(1) - m : m;
  }

  /// Index range of the coset itself at resolution N (ignores the complement flag).
  std::pair<std::uint64_t, std::uint64_t> range(unsigned resolution) const {
    if (depth > resolution)
      throw std::invalid_argument("coset of depth " + std::to_string(depth) + " is not resolved at resolution " +
                                  std::to_string(resolution));
    const unsigned shift = resolution - depth;
    return {anchor << shift, (anchor + 1) << shift};
  }

  bool contains(std::uint64_t index, unsigned resolution) const {
    const auto [lo, hi] = range(resolution);
    const bool inside = index >= lo && index < hi;
    return inside != complement;
  }
};

/// The shells I_s \ I_{s+1}, 0 <= s < M, which partition G \ I_M. Shell s is
/// the coset of depth s+1 with prefix 0...01.
inline std::vector<CosetSelector> shell_decompose(unsigned m) {
  if (m == 0) throw std::invalid_argument("shell_decompose: M must be at least 1");
  if (m > 63) throw std::invalid_argument("shell_decompose: M must be below 64");
  std::vector<CosetSelector> shells;
  for (unsigned s = 0; s < m; ++s) shells.push_back(CosetSelector::coset(s + 1, 1));
  return shells;
}

/// Coset index of e_s (coordinate s equal to 1, all others 0) at resolution N.
inline std::uint64_t unit_point(unsigned s, unsigned resolution) {
  if (s >= resolution)
    throw std::invalid_argument("unit_point: s = " + std::to_string(s) + " requires resolution above " + std::to_string(s));
  return std::uint64_t{1} << (resolution - 1 - s);
}

/// Shell index s with x in I_s \ I_{s+1} (first nonzero coordinate), or
/// nullopt when the coset lies in I_N.
inline std::optional<unsigned> shell_of(std::uint64_t index, unsigned resolution) {
  if (index == 0) return std::nullopt;
  return resolution - static_cast<unsigned>(std::bit_width(index));
}

// ---- Haar-measure functionals ---------------------------------------------

inline DyadicRational haar_integral(const StepFunction& f) {
  BigInt total = 0;
  for (const BigInt& v : f.numerators()) total += v;
  return DyadicRational(std::move(total), f.exponent() + f.resolution());
}

inline Rational haar_integral(const RationalFunction& f) {
  Rational total = 0;
  for (const Rational& v : f.values) total += v;
  return total / Rational(pow2(f.resolution));
}

/// Exact ||f||_1.
inline DyadicRational l1_norm(const StepFunction& f) {
  BigInt total = 0;
  for (const BigInt& v : f.numerators()) total += boost::multiprecision::abs(v);
  return DyadicRational(std::move(total), f.exponent() + f.resolution());
}

inline Rational l1_norm(const RationalFunction& f) {
  Rational total = 0;
  for (const Rational& v : f.values) total += boost::multiprecision::abs(v);
  return total / Rational(pow2(f.resolution));
}

inline double l1_norm(const RealFunction& f) {
  long double total = 0;
  for (double v : f.values) total += std::fabs(v);
  return static_cast<double>(std::ldexp(total, -static_cast<int>(f.resolution)));
}

namespace detail {

template <class Magnitude>
double lp_from_magnitudes(const std::vector<Magnitude>& mags, unsigned resolution, const Exponent& p,
                          const std::function<double(const Magnitude&)>& as_double) {
  const double pv = p.value();
  long double total = 0;
  for (const auto& m : mags) total += std::pow(static_cast<long double>(as_double(m)), static_cast<long double>(pv));
  total = std::ldexp(total, -static_cast<int>(resolution));
  return static_cast<double>(std::pow(total, 1.0L / pv));
}

}  // namespace detail

/// (int |f|^p dmu)^(1/p) in binary64. For p = 1 this is the rounding of the
/// exact l1_norm.
inline double lp_norm(const StepFunction& f, const Exponent& p) {
  if (p.is_one()) return l1_norm(f).to_double();
  const double scale = std::ldexp(1.0, -static_cast<int>(f.exponent()));
  std::vector<double> mags;
  mags.reserve(f.size());
  for (const BigInt& v : f.numerators()) mags.push_back(std::fabs(to_double(v)) * scale);
  return detail::lp_from_magnitudes<double>(mags, f.resolution(), p, [](const double& x) { return x; });
}

inline double lp_norm(const RationalFunction& f, const Exponent& p) {
  if (p.is_one()) return to_double(l1_norm(f));
  std::vector<double> mags;
  for (const Rational& v : f.values) mags.push_back(std::fabs(to_double(v)));
  return detail::lp_from_magnitudes<double>(mags, f.resolution, p, [](const double& x) { return x; });
}

inline double lp_norm(const RealFunction& f, const Exponent& p) {
  std::vector<double> mags;
  for (double v : f.values) mags.push_back(std::fabs(v));
  return detail::lp_from_magnitudes<double>(mags, f.resolution, p, [](const double& x) { return x; });
}

namespace detail {

/// Magnitudes |f(i)| for the indices selected, sorted descending.
template <class T, class Abs>
std::vector<T> selected_magnitudes(const std::vector<T>& values, unsigned resolution,
                                   const std::optional<CosetSelector>& selector, Abs abs_fn) {
  std::vector<T> mags;
  mags.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!selector || selector->contains(i, resolution)) mags.push_back(abs_fn(values[i]));
  std::sort(mags.begin(), mags.end(), [](const T& a, const T& b) { return a > b; });
  return mags;
}

/// Calls visit(t, count) for every distinct positive level t of a descending
/// magnitude list, with count = #{i : mags[i] >= t}.
template <class T, class Visit>
void for_each_level(const std::vector<T>& mags, Visit visit) {
  std::size_t i = 0;
  while (i < mags.size() && mags[i] > T(0)) {
    std::size_t j = i;
    while (j < mags.size() && mags[j] == mags[i]) ++j;
    visit(mags[i], j);
    i = j;
  }
}

}  // namespace detail

/// sup_{t > 0} t * mu{x in domain : |f(x)| >= t}, exact. The supremum is
/// attained at one of the finitely many values of |f|.
inline DyadicRational weak_l1(const StepFunction& f, const std::optional<CosetSelector>& selector = std::nullopt) {
  std::vector<BigInt> nums(f.numerators().begin(), f.numerators().end());
  const auto mags = detail::selected_magnitudes(nums, f.resolution(), selector,
                                                [](const BigInt& v) { return BigInt(boost::multiprecision::abs(v)); });
  BigInt best = 0;
  detail::for_each_level(mags, [&](const BigInt& t, std::size_t count) { best = std::max(best, BigInt(t * count)); });
  return DyadicRational(std::move(best), f.exponent() + f.resolution());
}

inline Rational weak_l1(const RationalFunction& f, const std::optional<CosetSelector>& selector = std::nullopt) {
  const auto mags = detail::selected_magnitudes(f.values, f.resolution, selector,
                                                [](const Rational& v) { return Rational(boost::multiprecision::abs(v)); });
  Rational best = 0;
  detail::for_each_level(mags, [&](const Rational& t, std::size_t count) { best = std::max(best, Rational(t * count)); });
  return best / Rational(pow2(f.resolution));
}

/// sup_{t > 0} t * mu{x in domain : |f(x)| >= t}^(1/p), binary64.
inline double weak_lp(const RealFunction& f, const Exponent& p, const std::optional<CosetSelector>& selector = std::nullopt) {
  const auto mags = detail::selected_magnitudes(f.values, f.resolution, selector, [](double v) { return std::fabs(v); });
  const double inv_p = 1.0 / p.value();
  double best = 0;
  detail::for_each_level(mags, [&](double t, std::size_t count) {
    const double measure = std::ldexp(static_cast<double>(count), -static_cast<int>(f.resolution));
    best = std::max(best, t * std::pow(measure, inv_p));
  });
  return best;
}

inline double weak_lp(const StepFunction& f, const Exponent& p, const std::optional<CosetSelector>& selector = std::nullopt) {
  if (p.is_one()) return weak_l1(f, selector).to_double();
  std::vector<double> vals;
  vals.reserve(f.size());
  const double scale = std::ldexp(1.0, -static_cast<int>(f.exponent()));
  for (const BigInt& v : f.numerators()) vals.push_back(to_double(v) * scale);
  return weak_lp(RealFunction(f.resolution(), std::move(vals)), p, selector);
}

/// Indicator of a coset (or its complement) at resolution N.
inline StepFunction indicator(const CosetSelector& c, unsigned resolution) {
  std::vector<BigInt> nums(std::size_t{1} << resolution);
  for (std::size_t i = 0; i < nums.size(); ++i) nums[i] = c.contains(i, resolution) ? 1 : 0;
  return StepFunction(resolution, std::move(nums), 0);
}

}  // namespace walsh
