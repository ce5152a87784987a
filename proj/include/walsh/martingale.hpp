#pragma once

// Dyadic martingales F_m = S_{2^m} f of finite-resolution functions, the
// maximal function F* = sup_m |F_m|, H_p norms, p-atoms and finite atomic
// combinations.

#include "walsh/dyadic_domain.hpp"
#include "walsh/numeric.hpp"
#include "walsh/random.hpp"
#include "walsh/step_function.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace walsh {

/// E(f | zeta_m): block averages over the depth-m cosets, at resolution m.
inline StepFunction conditional_expectation(const StepFunction& f, unsigned m) {
  const unsigned n = f.resolution();
  if (m >= n) return f;
  const std::size_t block = std::size_t{1} << (n - m);
  std::vector<BigInt> sums(std::size_t{1} << m, BigInt(0));
  for (std::size_t i = 0; i < f.size(); ++i) sums[i / block] += f.numerators()[i];
  return StepFunction(m, std::move(sums), f.exponent() + (n - m));
}

/// The martingale generated by a terminal function at resolution N; its
/// levels F_m (m >= N) all equal the terminal function.
class Martingale {
 public:
  Martingale() : Martingale(StepFunction(0)) {}
  explicit Martingale(StepFunction terminal) {
    const unsigned n = terminal.resolution();
    levels_.reserve(n + 1);
    for (unsigned m = 0; m < n; ++m) levels_.push_back(conditional_expectation(terminal, m));
    levels_.push_back(std::move(terminal));
  }

  unsigned resolution() const { return static_cast<unsigned>(levels_.size() - 1); }
  const StepFunction& terminal() const { return levels_.back(); }
  /// F_m, stored at resolution min(m, N).
  const StepFunction& level(unsigned m) const { return levels_[std::min<std::size_t>(m, levels_.size() - 1)]; }

 private:
  std::vector<StepFunction> levels_;
};

/// F* = max_m |F_m| at the terminal resolution.
inline StepFunction maximal_function(const Martingale& F) {
  const unsigned n = F.resolution();
  unsigned e = 0;
  for (unsigned m = 0; m <= n; ++m) e = std::max(e, F.level(m).exponent());
  std::vector<BigInt> best(std::size_t{1} << n, BigInt(0));
  for (unsigned m = 0; m <= n; ++m) {
    const std::vector<BigInt> lvl = F.level(m).numerators_at(e);
    const unsigned shift = n - m;
    for (std::size_t i = 0; i < best.size(); ++i) {
      const BigInt& v = lvl[i >> shift];
      if (boost::multiprecision::abs(v) > best[i]) best[i] = boost::multiprecision::abs(v);
    }
  }
  return StepFunction(n, std::move(best), e);
}

/// ||F||_{H_1} = ||F*||_1, exact.
inline DyadicRational h1_norm(const Martingale& F) { return l1_norm(maximal_function(F)); }

/// ||F||_{H_p} = ||F*||_p in binary64 (rounding of the exact value for p = 1).
inline double hp_norm(const Martingale& F, const Exponent& p) { return lp_norm(maximal_function(F), p); }

// ---- atoms -----------------------------------------------------------------

/// A p-atom supported in the coset I_M(anchor): mean zero on it and
/// sup |a| <= mu(I_M)^(-1/p) = 2^(M/p).
struct Atom {
  Exponent p{1};
  unsigned depth = 0;        // M
  std::uint64_t anchor = 0;  // M-bit prefix of the supporting coset
  StepFunction values;

  CosetSelector support() const { return CosetSelector::coset(depth, anchor); }
};

struct AtomCheck {
  bool resolvable = false;  // M < N: the support holds at least two depth-N cosets
  bool supported = false;
  bool mean_zero = false;
  bool bounded = false;
  std::string diagnostics;

  bool valid() const { return resolvable && supported && mean_zero && bounded; }
};

/// True when |v| <= 2^(M/p) with p = u/w, checked exactly as |v|^u <= 2^(M w).
inline bool within_atom_bound(const DyadicRational& v, unsigned depth, const Exponent& p) {
  const auto u = static_cast<unsigned>(p.num());
  const auto w = static_cast<std::uint64_t>(p.den());
  const BigInt mag = boost::multiprecision::abs(v.numerator());
  // (mag / 2^e)^u <= 2^(M w)  <=>  mag^u <= 2^(M w + e u)
  return boost::multiprecision::pow(mag, u) <= pow2(static_cast<unsigned>(depth * w + std::uint64_t{v.exponent()} * u));
}

inline AtomCheck validate_atom(const Atom& a) {
  AtomCheck check;
  std::ostringstream why;
  const unsigned n = a.values.resolution();
  check.resolvable = a.depth < n;
  if (!check.resolvable) why << "support depth M = " << a.depth << " is not below the resolution N = " << n << "; ";
  if (a.depth > 63 || (a.depth < 64 && (a.anchor >> a.depth) != 0)) {
    why << "anchor does not fit in M bits; ";
    check.diagnostics = why.str();
    return check;
  }
  if (a.depth > n) {
    why << "support coset is finer than the resolution; ";
    check.diagnostics = why.str();
    return check;
  }
  const auto [lo, hi] = a.support().range(n);
  check.supported = true;
  BigInt sum = 0;
  BigInt peak = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const BigInt& v = a.values.numerators()[i];
    if (i < lo || i >= hi) {
      if (!v.is_zero()) check.supported = false;
      continue;
    }
    sum += v;
    peak = std::max(peak, BigInt(boost::multiprecision::abs(v)));
  }
  if (!check.supported) why << "nonzero values outside I_M; ";
  check.mean_zero = sum.is_zero();
  if (!check.mean_zero) why << "integral over I_M is " << DyadicRational(sum, a.values.exponent() + n).fraction() << "; ";
  check.bounded = within_atom_bound(DyadicRational(peak, a.values.exponent()), a.depth, a.p);
  if (!check.bounded)
    why << "sup |a| = " << DyadicRational(peak, a.values.exponent()).fraction() << " exceeds 2^(M/p) with M = " << a.depth
        << ", p = " << a.p.str() << "; ";
  check.diagnostics = why.str();
  if (check.valid()) check.diagnostics = "valid";
  return check;
}

namespace detail {
inline constexpr unsigned kAtomRescaleBits = 20;
}

/// Seeded random p-atom on I_M(anchor) at resolution N: +-2^floor(M/p) on
/// each depth-N coset of the support, mean removed by subtraction, then
/// rescaled by a dyadic factor so the sup bound holds again.
inline Atom random_atom(std::uint64_t seed, const Exponent& p, unsigned depth, unsigned resolution,
                        std::uint64_t anchor = 0) {
  detail::require_resolution(resolution);
  if (depth >= resolution)
    throw std::invalid_argument("random_atom: M = " + std::to_string(depth) + " must be below N = " +
                                std::to_string(resolution));
  if (depth < 64 && anchor >> depth != 0) throw std::invalid_argument("random_atom: anchor does not fit in M bits");
  Rng rng(seed);
  const unsigned level = static_cast<unsigned>((std::uint64_t{depth} * static_cast<std::uint64_t>(p.den())) /
                                               static_cast<std::uint64_t>(p.num()));  // floor(M/p)
  const unsigned spread = resolution - depth;
  const std::size_t cells = std::size_t{1} << spread;
  const BigInt height = pow2(level);

  std::vector<BigInt> draws(cells);
  BigInt sum = 0;
  for (std::size_t i = 0; i < cells; ++i) {
    draws[i] = (rng() >> 63) ? -height : height;
    sum += draws[i];
  }
  // u_i = v_i - sum / cells, held as numerators over 2^spread
  BigInt peak = 0;
  for (BigInt& d : draws) {
    d = (d << spread) - sum;
    peak = std::max(peak, BigInt(boost::multiprecision::abs(d)));
  }
  const BigInt bound = height << spread;
  unsigned exponent = spread;
  if (peak > bound) {
    const BigInt factor = (bound << detail::kAtomRescaleBits) / peak;  // floor, so factor / 2^bits <= bound / peak
    for (BigInt& d : draws) d *= factor;
    exponent += detail::kAtomRescaleBits;
  }
  std::vector<BigInt> values(std::size_t{1} << resolution, BigInt(0));
  const std::size_t start = static_cast<std::size_t>(anchor) << spread;
  for (std::size_t i = 0; i < cells; ++i) values[start + i] = std::move(draws[i]);
  return Atom{p, depth, anchor, StepFunction(resolution, std::move(values), exponent)};
}

/// sum_k mu_k a_k with finitely many terms.
struct AtomicCombination {
  std::vector<DyadicRational> weights;
  std::vector<Atom> atoms;

  DyadicRational total_weight() const {
    DyadicRational t(0);
    for (const auto& w : weights) t += abs(w);
    return t;
  }
};

/// The martingale with F_n = sum_k mu_k S_{2^n} a_k, i.e. terminal sum_k mu_k a_k.
inline Martingale build_from_atoms(const AtomicCombination& c, unsigned resolution) {
  if (c.weights.size() != c.atoms.size()) throw std::invalid_argument("build_from_atoms: weight and atom counts differ");
  StepFunction total(resolution);
  for (std::size_t k = 0; k < c.atoms.size(); ++k) {
    const StepFunction& a = c.atoms[k].values;
    if (a.resolution() > resolution)
      throw std::invalid_argument("build_from_atoms: atom " + std::to_string(k) + " has resolution above N");
    total = total + a.refined(resolution).scaled(c.weights[k]);
  }
  return Martingale(std::move(total));
}

}  // namespace walsh
