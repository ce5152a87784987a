#pragma once

// Test-only reference computations. Each one follows a defining formula
// literally, with no shared code path with the library kernels it checks.

#include "walsh/numeric.hpp"
#include "walsh/random.hpp"
#include "walsh/step_function.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using walsh::BigInt;
using walsh::Rational;

/// V(n) = n_0 + sum_{k>=1} |n_k - n_{k-1}| over the binary digits.
inline unsigned variation(std::uint64_t n) {
  unsigned v = n & 1u;
  for (unsigned k = 1; k < 64; ++k) {
    const int a = static_cast<int>((n >> k) & 1u);
    const int b = static_cast<int>((n >> (k - 1)) & 1u);
    v += static_cast<unsigned>(a > b ? a - b : b - a);
  }
  return v;
}

/// Maximal runs of one-digits by scanning bits one at a time.
inline std::vector<std::pair<unsigned, unsigned>> blocks(std::uint64_t n) {
  std::vector<std::pair<unsigned, unsigned>> out;
  int start = -1;
  for (unsigned k = 0; k <= 64; ++k) {
    const bool one = k < 64 && ((n >> k) & 1u);
    if (one && start < 0) start = static_cast<int>(k);
    if (!one && start >= 0) {
      out.emplace_back(static_cast<unsigned>(start), k - 1);
      start = -1;
    }
  }
  return out;
}

/// Coordinate x_k of the coset with index i at resolution N (x_0 is the top bit).
inline int coordinate(std::uint64_t i, unsigned k, unsigned resolution) {
  return static_cast<int>((i >> (resolution - 1 - k)) & 1u);
}

/// w_n(x) as the product of Rademacher functions r_k(x) = (-1)^{x_k} over the
/// digits of n.
inline int walsh(std::uint64_t n, std::uint64_t i, unsigned resolution) {
  int w = 1;
  for (unsigned k = 0; k < resolution; ++k)
    if ((n >> k) & 1u) w *= coordinate(i, k, resolution) ? -1 : 1;
  return w;
}

inline std::vector<Rational> values(const walsh::StepFunction& f) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(f.value(i).to_rational());
  return out;
}

/// f^(k) = 2^-N sum_i f(i) w_k(i).
inline Rational coefficient(const std::vector<Rational>& f, unsigned resolution, std::uint64_t k) {
  Rational total = 0;
  for (std::size_t i = 0; i < f.size(); ++i) total += f[i] * walsh(k, i, resolution);
  return total / Rational(walsh::pow2(resolution));
}

/// S_n f(i) = sum_{k<n} f^(k) w_k(i), for all i. Requires n <= 2^N.
inline std::vector<Rational> partial_sum(const std::vector<Rational>& f, unsigned resolution, std::uint64_t n) {
  std::vector<Rational> coeffs;
  for (std::uint64_t k = 0; k < n; ++k) coeffs.push_back(coefficient(f, resolution, k));
  std::vector<Rational> out(f.size(), Rational(0));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::uint64_t k = 0; k < n; ++k) out[i] += coeffs[k] * walsh(k, i, resolution);
  return out;
}

/// sup_{n >= 1} |S_n f| / V(n) for f at resolution N, by brute force after
/// refining to N + extra: S_n f = f for n >= 2^N and V(2^(N+extra)) = 2 is
/// the smallest weight there, so n <= 2^(N+extra) already attains the sup.
inline std::vector<Rational> variation_maximal(const walsh::StepFunction& f, unsigned extra = 1) {
  const unsigned n = f.resolution() + extra;
  const auto g = values(f.refined(n));
  std::vector<Rational> best(g.size(), Rational(0));
  for (std::uint64_t m = 1; m <= (std::uint64_t{1} << n); ++m) {
    const auto s = partial_sum(g, n, m);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Rational v = boost::multiprecision::abs(s[i]) / variation(m);
      if (v > best[i]) best[i] = v;
    }
  }
  // back to resolution N: the sup is constant on depth-N cosets
  std::vector<Rational> out;
  for (std::size_t i = 0; i < best.size(); i += std::size_t{1} << extra) out.push_back(best[i]);
  return out;
}

/// Random step function with small integer numerators over 2^exponent.
inline walsh::StepFunction random_step(walsh::Rng& rng, unsigned resolution, std::int64_t bound = 16,
                                       unsigned exponent = 0) {
  std::vector<BigInt> v(std::size_t{1} << resolution);
  for (auto& x : v) x = walsh::uniform_between(rng, -bound, bound);
  return walsh::StepFunction(resolution, std::move(v), exponent);
}

}  // namespace oracle
