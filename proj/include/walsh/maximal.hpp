#pragma once

// Weighted maximal operators sup_{n in idx} |S_n f| / w(n), evaluated exactly
// over every admissible index. For n >= 2^N the partial sums of a
// resolution-N function equal f, so the infinite tail contributes
// |f| / inf_{n >= 2^N} w(n).

#include "walsh/dyadic_domain.hpp"
#include "walsh/martingale.hpp"
#include "walsh/numeric.hpp"
#include "walsh/step_function.hpp"
#include "walsh/walsh_transform.hpp"
#include "walsh/weights.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace walsh {

namespace detail {

struct ExactWeights {
  std::vector<BigInt> num;
  std::vector<BigInt> den;
  unsigned bits = 0;  // bit length bound of every numerator and denominator
};

inline ExactWeights exact_weights(const WeightFamily& family, std::span<const std::uint64_t> indices) {
  ExactWeights w;
  w.num.reserve(indices.size());
  w.den.reserve(indices.size());
  for (std::uint64_t n : indices) {
    const Rational r = *family.value(n).exact;
    w.num.push_back(boost::multiprecision::numerator(r));
    w.den.push_back(boost::multiprecision::denominator(r));
    w.bits = std::max({w.bits, bit_length(w.num.back()), bit_length(w.den.back())});
  }
  return w;
}

template <class Int>
std::vector<Int> narrow(const std::vector<BigInt>& v) {
  std::vector<Int> out;
  out.reserve(v.size());
  for (const BigInt& x : v) {
    if constexpr (std::is_same_v<Int, BigInt>)
      out.push_back(x);
    else
      out.push_back(x.convert_to<Int>());
  }
  return out;
}

template <class Int>
Int magnitude(const Int& v) {
  return v < Int(0) ? Int(-v) : v;
}

template <class Int>
BigInt widen(const Int& v) {
  return BigInt(v);
}

template <class Int>
double as_double(const Int& v) {
  if constexpr (std::is_same_v<Int, BigInt>)
    return v.template convert_to<double>();
  else
    return static_cast<double>(v);
}

/// Pointwise best fraction bn/bd of |S_n| wd / wn over the visited indices.
template <class Int>
void exact_sup_kernel(const std::vector<BigInt>& coeffs, unsigned resolution, std::span<const std::uint64_t> targets,
                      const ExactWeights& w, std::vector<BigInt>& best_num, std::vector<BigInt>& best_den) {
  const std::vector<Int> c = narrow<Int>(coeffs);
  const std::vector<Int> wn = narrow<Int>(w.num);
  const std::vector<Int> wd = narrow<Int>(w.den);
  const std::size_t cells = std::size_t{1} << resolution;
  std::vector<Int> bn(cells, Int(0));
  std::vector<Int> bd(cells, Int(1));
  std::size_t pos = 0;
  for_each_partial_sum<Int>(c, resolution, targets, [&](std::uint64_t n, std::span<const Int> sums) {
    while (targets[pos] != n) ++pos;
    const Int& num = wn[pos];
    const Int& den = wd[pos];
    for (std::size_t i = 0; i < cells; ++i) {
      if (sums[i] == Int(0)) continue;
      const Int cand = magnitude(sums[i]) * den;  // candidate cand / num
      if (cand * bd[i] > bn[i] * num) {
        bn[i] = cand;
        bd[i] = num;
      }
    }
  });
  best_num.resize(cells);
  best_den.resize(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    best_num[i] = widen(bn[i]);
    best_den[i] = widen(bd[i]);
  }
}

template <class Int>
std::vector<double> approx_sup_kernel(const std::vector<BigInt>& coeffs, unsigned resolution,
                                      std::span<const std::uint64_t> targets, const std::vector<double>& weights) {
  const std::vector<Int> c = narrow<Int>(coeffs);
  const std::size_t cells = std::size_t{1} << resolution;
  std::vector<double> best(cells, 0.0);
  std::size_t pos = 0;
  for_each_partial_sum<Int>(c, resolution, targets, [&](std::uint64_t n, std::span<const Int> sums) {
    while (targets[pos] != n) ++pos;
    const double inv = 1.0 / weights[pos];
    for (std::size_t i = 0; i < cells; ++i) best[i] = std::max(best[i], std::fabs(as_double(sums[i])) * inv);
  });
  return best;
}

inline unsigned spectrum_sum_bits(const Spectrum& s) {
  BigInt total = 0;
  for (const BigInt& v : s.numerators()) total += boost::multiprecision::abs(v);
  return bit_length(total);
}

}  // namespace detail

/// sup_{n in idx} |S_n f| / w(n) with exact rational values. The family must
/// be exact (rational weights); see weighted_maximal_approx otherwise.
inline RationalFunction weighted_maximal(const StepFunction& f, const WeightFamily& family, const IndexSet& idx) {
  if (!family.exact())
    throw std::invalid_argument("weighted_maximal: weight " + family.name() + " is irrational; use weighted_maximal_approx");
  if (idx.unbounded() && !family.supports_full_range())
    throw std::invalid_argument("weighted_maximal: weight " + family.name() + " needs an explicit index family");
  const unsigned n = f.resolution();
  const std::uint64_t top = std::uint64_t{1} << n;
  const Spectrum spectrum = wht(f);
  const std::vector<std::uint64_t> targets = idx.members_up_to(top, family);
  const detail::ExactWeights weights = detail::exact_weights(family, targets);

  std::vector<BigInt> coeffs(spectrum.numerators().begin(), spectrum.numerators().end());
  std::vector<BigInt> bn, bd;
  if (detail::fits_int128(detail::spectrum_sum_bits(spectrum) + 2 * weights.bits + 1))
    detail::exact_sup_kernel<int128>(coeffs, n, targets, weights, bn, bd);
  else
    detail::exact_sup_kernel<BigInt>(coeffs, n, targets, weights, bn, bd);

  // Beyond 2^N: S_m f = f.
  std::optional<Rational> tail;
  if (idx.unbounded()) {
    tail = *family.tail_infimum(n).exact;
  } else {
    for (std::uint64_t m : idx.members_above(top)) {
      const Rational w = *family.value(m).exact;
      if (!tail || w < *tail) tail = w;
    }
  }

  const BigInt scale = pow2(spectrum.exponent());
  const BigInt fscale = pow2(f.exponent());
  std::vector<Rational> out(bn.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = Rational(bn[i], bd[i] * scale);
    if (tail) {
      const Rational t = Rational(boost::multiprecision::abs(f.numerators()[i]), fscale) / *tail;
      if (t > out[i]) out[i] = t;
    }
  }
  return RationalFunction(n, std::move(out));
}

/// sup_{n in idx} |S_n f| / w(n) in binary64, for every weight family.
/// Partial sums are exact; only the division by w(n) rounds.
inline RealFunction weighted_maximal_approx(const StepFunction& f, const WeightFamily& family, const IndexSet& idx) {
  if (idx.unbounded() && !family.supports_full_range())
    throw std::invalid_argument("weighted_maximal_approx: weight " + family.name() + " needs an explicit index family");
  const unsigned n = f.resolution();
  const std::uint64_t top = std::uint64_t{1} << n;
  const Spectrum spectrum = wht(f);
  const std::vector<std::uint64_t> targets = idx.members_up_to(top, family);
  std::vector<double> weights;
  weights.reserve(targets.size());
  for (std::uint64_t m : targets) weights.push_back(family.value(m).approx);

  std::vector<BigInt> coeffs(spectrum.numerators().begin(), spectrum.numerators().end());
  std::vector<double> best = detail::fits_int128(detail::spectrum_sum_bits(spectrum) + 1)
                                 ? detail::approx_sup_kernel<int128>(coeffs, n, targets, weights)
                                 : detail::approx_sup_kernel<BigInt>(coeffs, n, targets, weights);
  const double scale = std::ldexp(1.0, -static_cast<int>(spectrum.exponent()));
  for (double& b : best) b *= scale;

  std::optional<double> tail;
  if (idx.unbounded()) {
    tail = family.tail_infimum(n).approx;
  } else {
    for (std::uint64_t m : idx.members_above(top)) {
      const double w = family.value(m).approx;
      if (!tail || w < *tail) tail = w;
    }
  }
  if (tail) {
    const double fscale = std::ldexp(1.0, -static_cast<int>(f.exponent()));
    for (std::size_t i = 0; i < best.size(); ++i)
      best[i] = std::max(best[i], std::fabs(to_double(f.numerators()[i])) * fscale / *tail);
  }
  return RealFunction(n, std::move(best));
}

// ---- atoms off their support -------------------------------------------------

/// Translates a function by the group element whose coordinates form the
/// given index: g(x) = f(x + y). Translation is XOR on coset indices.
inline StepFunction translated(const StepFunction& f, std::uint64_t by) {
  std::vector<BigInt> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i ^ by] = f.numerators()[i];
  return StepFunction(f.resolution(), std::move(out), f.exponent());
}

namespace detail {

template <class Int>
void shell_sup_kernel(const std::vector<BigInt>& coeffs, unsigned depth, std::span<const std::uint64_t> targets,
                      const ExactWeights& w, std::vector<BigInt>& best_num, std::vector<BigInt>& best_den) {
  std::vector<Int> bn(depth, Int(0));
  std::vector<Int> bd(depth, Int(1));
  for (std::size_t pos = 0; pos < targets.size(); ++pos) {
    const std::uint64_t n = targets[pos];
    if (n >= coeffs.size() || coeffs[n].is_zero()) continue;
    Int coeff;
    if constexpr (std::is_same_v<Int, BigInt>)
      coeff = boost::multiprecision::abs(coeffs[n]);
    else
      coeff = magnitude(coeffs[n].template convert_to<Int>());
    Int num, den;
    if constexpr (std::is_same_v<Int, BigInt>) {
      num = w.num[pos];
      den = w.den[pos];
    } else {
      num = w.num[pos].template convert_to<Int>();
      den = w.den[pos].template convert_to<Int>();
    }
    for (unsigned s = 0; s < depth; ++s) {
      // On I_s \ I_{s+1}: |S_n a| = |(n mod 2^s) - n_s 2^s| |a^(n)|.
      const std::int64_t low = static_cast<std::int64_t>(n & ((std::uint64_t{1} << s) - 1));
      const std::int64_t c = ((n >> s) & 1u) ? (std::int64_t{1} << s) - low : low;
      if (c == 0) continue;
      const Int cand = Int(c) * coeff * den;
      if (cand * bd[s] > bn[s] * num) {
        bn[s] = cand;
        bd[s] = num;
      }
    }
  }
  best_num.assign(depth, BigInt(0));
  best_den.assign(depth, BigInt(1));
  for (unsigned s = 0; s < depth; ++s) {
    best_num[s] = widen(bn[s]);
    best_den[s] = widen(bd[s]);
  }
}

}  // namespace detail

/// Values of sup_{n in idx} |S_n a| / w(n) on the shells I_s \ I_{s+1},
/// 0 <= s < M, of the complement of an atom's support (translated so the
/// support is I_M). On each shell the operator is constant:
/// S_n a(x) = w_n(x) ((n mod 2^s) - n_s 2^s) a^(n), since the kernel
/// D_n(x + t) factors for t in I_M.
inline std::vector<Rational> off_support_shell_values(const Atom& a, const WeightFamily& family,
                                                      const IndexSet& idx = IndexSet::full()) {
  if (!family.exact()) throw std::invalid_argument("off_support_shell_values: weight " + family.name() + " is irrational");
  if (idx.unbounded() && !family.supports_full_range())
    throw std::invalid_argument("off_support_shell_values: weight " + family.name() + " needs an explicit index family");
  const unsigned n = a.values.resolution();
  if (a.depth > n) throw std::invalid_argument("off_support_shell_values: support depth exceeds resolution");
  const StepFunction centered = translated(a.values, a.anchor << (n - a.depth));
  const Spectrum spectrum = wht(centered);
  const std::vector<std::uint64_t> targets = idx.members_up_to(std::uint64_t{1} << n, family);
  const detail::ExactWeights weights = detail::exact_weights(family, targets);
  std::vector<BigInt> coeffs(spectrum.numerators().begin(), spectrum.numerators().end());
  const unsigned bits = detail::bit_length(centered.max_abs_numerator()) + 2 * n + 2 * weights.bits + 2;
  std::vector<BigInt> bn, bd;
  if (detail::fits_int128(bits))
    detail::shell_sup_kernel<int128>(coeffs, a.depth, targets, weights, bn, bd);
  else
    detail::shell_sup_kernel<BigInt>(coeffs, a.depth, targets, weights, bn, bd);
  // Members beyond 2^N give S_m a = a, which vanishes off the support.
  const BigInt scale = pow2(spectrum.exponent());
  std::vector<Rational> out(a.depth);
  for (unsigned s = 0; s < a.depth; ++s) out[s] = Rational(bn[s], bd[s] * scale);
  return out;
}

/// sup_t t mu{x : g(x) >= t} for g constant on the shells I_s \ I_{s+1}
/// (measure 2^-(s+1)), g = 0 elsewhere.
inline Rational weak_l1_over_shells(const std::vector<Rational>& shell_values) {
  std::vector<std::pair<Rational, unsigned>> levels;
  for (unsigned s = 0; s < shell_values.size(); ++s) levels.emplace_back(shell_values[s], s);
  std::sort(levels.begin(), levels.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  Rational best = 0;
  Rational measure = 0;
  for (std::size_t i = 0; i < levels.size() && levels[i].first > 0;) {
    const Rational t = levels[i].first;
    while (i < levels.size() && levels[i].first == t) {
      measure += Rational(BigInt(1), pow2(levels[i].second + 1));
      ++i;
    }
    best = std::max(best, Rational(t * measure));
  }
  return best;
}

/// sup_t t mu{x in G \ I_M : sup_n |S_n a(x)| / w(n) >= t} for a p-atom on I_M,
/// exact. Throws std::invalid_argument with the atom diagnostics when the
/// atom is invalid.
inline Rational weak_type_statistic(const Atom& a, const WeightFamily& family = WeightFamily::variation(),
                                    const IndexSet& idx = IndexSet::full()) {
  const AtomCheck check = validate_atom(a);
  if (!check.valid()) throw std::invalid_argument("weak_type_statistic: invalid atom: " + check.diagnostics);
  return weak_l1_over_shells(off_support_shell_values(a, family, idx));
}

/// The same statistic by definition: the full weighted maximal function on
/// every coset, then the weak-L1 functional restricted to G \ I_M.
inline Rational weak_type_statistic_direct(const Atom& a, const WeightFamily& family = WeightFamily::variation(),
                                           const IndexSet& idx = IndexSet::full()) {
  const AtomCheck check = validate_atom(a);
  if (!check.valid()) throw std::invalid_argument("weak_type_statistic_direct: invalid atom: " + check.diagnostics);
  const RationalFunction sup = weighted_maximal(a.values, family, idx);
  return weak_l1(sup, CosetSelector::outside(a.depth, a.anchor));
}

}  // namespace walsh
