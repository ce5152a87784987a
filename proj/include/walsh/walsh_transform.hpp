#pragma once

// Walsh functions in Paley order, the exact fast Walsh-Hadamard transform,
// Walsh-Fourier partial sums and Dirichlet kernels.
//
// w_n(x) = (-1)^(sum_k n_k x_k). With x_0 in the most significant index bit,
// the coordinate pattern of index i is bit_reverse(i), so
// w_n(i) = parity(n & bit_reverse(i)).

#include "walsh/dyadic_index.hpp"
#include "walsh/numeric.hpp"
#include "walsh/step_function.hpp"

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace walsh {

/// Reverses the low `bits` bits of i.
inline std::uint64_t bit_reverse(std::uint64_t i, unsigned bits) {
  std::uint64_t r = 0;
  for (unsigned b = 0; b < bits; ++b) {
    r = (r << 1) | (i & 1u);
    i >>= 1;
  }
  return r;
}

/// Table of bit_reverse(i, N) for all i < 2^N.
inline std::vector<std::uint32_t> bit_reverse_table(unsigned resolution) {
  detail::require_resolution(resolution);
  std::vector<std::uint32_t> t(std::size_t{1} << resolution, 0);
  for (std::size_t i = 1; i < t.size(); ++i)
    t[i] = static_cast<std::uint32_t>((t[i >> 1] >> 1) | ((i & 1u) << (resolution - 1)));
  return t;
}

inline bool walsh_sign_negative(std::uint64_t n, std::uint64_t coordinates) {
  return (std::popcount(n & coordinates) & 1) != 0;
}

/// w_n on the depth-N coset with the given index. Requires n < 2^N so that
/// w_n is constant on depth-N cosets.
inline int walsh_eval(std::uint64_t n, std::uint64_t index, unsigned resolution) {
  if (resolution < 64 && n >> resolution != 0)
    throw std::invalid_argument("walsh_eval: |n| = " + std::to_string(high_bit(n)) + " not below resolution " +
                                std::to_string(resolution));
  if (resolution < 64 && index >> resolution != 0) throw std::invalid_argument("walsh_eval: coset index out of range");
  return walsh_sign_negative(n, bit_reverse(index, resolution)) ? -1 : 1;
}

/// w_n sampled at resolution N.
inline StepFunction walsh_function(std::uint64_t n, unsigned resolution) {
  detail::require_resolution(resolution);
  if (n >> resolution != 0)
    throw std::invalid_argument("walsh_function: n = " + std::to_string(n) + " needs resolution above " +
                                std::to_string(high_bit(n)));
  const auto rev = bit_reverse_table(resolution);
  std::vector<BigInt> v(rev.size());
  for (std::size_t i = 0; i < rev.size(); ++i) v[i] = walsh_sign_negative(n, rev[i]) ? -1 : 1;
  return StepFunction(resolution, std::move(v), 0);
}

/// In-place unnormalized Hadamard butterfly in natural index order:
/// out[k] = sum_j in[j] * (-1)^popcount(k & j).
template <class T>
void hadamard_butterfly(std::span<T> data) {
  const std::size_t n = data.size();
  if (!std::has_single_bit(n)) throw std::invalid_argument("hadamard_butterfly: length must be a power of two");
  for (std::size_t h = 1; h < n; h <<= 1)
    for (std::size_t i = 0; i < n; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        T a = data[j];
        T b = data[j + h];
        data[j] = a + b;
        data[j + h] = a - b;
      }
}

namespace detail {

/// Butterfly over BigInt values, routed through int128 when every
/// intermediate is bounded by max|v| * 2^N < 2^125.
inline void butterfly_exact(std::vector<BigInt>& values, unsigned resolution) {
  BigInt max_abs = 0;
  for (const BigInt& v : values) max_abs = std::max(max_abs, BigInt(boost::multiprecision::abs(v)));
  if (fits_int128(bit_length(max_abs) + resolution)) {
    std::vector<int128> fast(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) fast[i] = values[i].convert_to<int128>();
    hadamard_butterfly<int128>(fast);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = fast[i];
  } else {
    hadamard_butterfly<BigInt>(values);
  }
}

}  // namespace detail

/// Walsh-Fourier coefficients f^(k) = int f w_k dmu, k < 2^N, exact.
class Spectrum : public DyadicArray {
 public:
  using DyadicArray::DyadicArray;
  DyadicRational coefficient(std::uint64_t k) const {
    if (k >= size()) return DyadicRational(0);  // f^(k) = 0 beyond 2^N
    return value(k);
  }
};

inline Spectrum wht(const StepFunction& f) {
  const unsigned n = f.resolution();
  const auto rev = bit_reverse_table(n);
  std::vector<BigInt> g(f.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[rev[i]] = f.numerators()[i];
  detail::butterfly_exact(g, n);
  return Spectrum(n, std::move(g), f.exponent() + n);
}

inline StepFunction inverse_wht(const Spectrum& s) {
  const unsigned n = s.resolution();
  std::vector<BigInt> h(s.numerators().begin(), s.numerators().end());
  detail::butterfly_exact(h, n);
  const auto rev = bit_reverse_table(n);
  std::vector<BigInt> f(h.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::move(h[rev[i]]);
  return StepFunction(n, std::move(f), s.exponent());
}

/// S_n f = sum_{k<n} f^(k) w_k from a precomputed spectrum, 1 <= n <= 2^N.
inline StepFunction partial_sum(const Spectrum& s, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("partial_sum: n must be at least 1");
  if (n > s.size())
    throw std::invalid_argument("partial_sum: n = " + std::to_string(n) + " exceeds 2^N = " + std::to_string(s.size()));
  std::vector<BigInt> c(s.numerators().begin(), s.numerators().end());
  for (std::size_t k = n; k < c.size(); ++k) c[k] = 0;
  return inverse_wht(Spectrum(s.resolution(), std::move(c), s.exponent()));
}

inline StepFunction partial_sum(const StepFunction& f, std::uint64_t n) { return partial_sum(wht(f), n); }

namespace detail {

/// Visits S_n for every n in `targets` (sorted ascending, each in [1, 2^N]),
/// given the spectrum numerators c at a common exponent. S_n numerators share
/// that exponent and are listed in coset index order. Chooses between a
/// running sum (adding c_k w_k one term at a time) and one truncated inverse
/// transform per target, whichever costs fewer passes over the 2^N cells.
template <class Int, class Visit>
void for_each_partial_sum(const std::vector<Int>& c, unsigned resolution, std::span<const std::uint64_t> targets,
                          Visit visit) {
  if (targets.empty()) return;
  const std::size_t cells = std::size_t{1} << resolution;
  const auto rev = bit_reverse_table(resolution);
  const std::uint64_t top = targets.back();
  std::size_t nonzero = 0;
  for (std::uint64_t k = 0; k < top; ++k) nonzero += c[k] != Int(0);
  const std::size_t running_cost = nonzero + targets.size();
  const std::size_t transform_cost = targets.size() * (resolution + 2);

  std::vector<Int> sums(cells, Int(0));
  if (running_cost <= transform_cost) {
    std::size_t next = 0;
    for (std::uint64_t k = 0; k < top && next < targets.size(); ++k) {
      if (c[k] != Int(0)) {
        const Int ck = c[k];
        for (std::size_t i = 0; i < cells; ++i) {
          if (walsh_sign_negative(k, rev[i]))
            sums[i] -= ck;
          else
            sums[i] += ck;
        }
      }
      while (next < targets.size() && targets[next] == k + 1) visit(targets[next++], std::span<const Int>(sums));
    }
    return;
  }
  std::vector<Int> h(cells);
  for (std::uint64_t n : targets) {
    for (std::size_t k = 0; k < cells; ++k) h[k] = k < n ? c[k] : Int(0);
    hadamard_butterfly<Int>(h);
    for (std::size_t i = 0; i < cells; ++i) sums[i] = h[rev[i]];
    visit(n, std::span<const Int>(sums));
  }
}

}  // namespace detail

// ---- Dirichlet kernels ------------------------------------------------------

namespace detail {

inline void require_kernel_resolution(std::uint64_t n, unsigned resolution, const char* what) {
  require_index(n, what);
  require_resolution(resolution);
  if (high_bit(n) >= resolution)
    throw std::invalid_argument(std::string(what) + ": |n| = " + std::to_string(high_bit(n)) +
                                " must be below the resolution " + std::to_string(resolution));
}

}  // namespace detail

/// D_n = w_0 + ... + w_{n-1}, term by term. O(n 2^N).
template <class Int = std::int64_t>
std::vector<Int> dirichlet_direct_values(std::uint64_t n, unsigned resolution) {
  detail::require_kernel_resolution(n, resolution, "dirichlet_direct");
  const auto rev = bit_reverse_table(resolution);
  std::vector<Int> d(rev.size(), Int(0));
  for (std::uint64_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += walsh_sign_negative(k, rev[i]) ? Int(-1) : Int(1);
  return d;
}

/// D_n = w_n sum_k n_k r_k D_{2^k} with D_{2^k} = 2^k on I_k and 0 off I_k.
/// The cosets I_k are nested, so the sum stops at the first k with x not in I_k.
template <class Int = std::int64_t>
std::vector<Int> dirichlet_closed_values(std::uint64_t n, unsigned resolution) {
  detail::require_kernel_resolution(n, resolution, "dirichlet_closed");
  const auto rev = bit_reverse_table(resolution);
  std::vector<Int> d(rev.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const std::uint64_t x = rev[i];
    Int total(0);
    for (std::uint64_t digits = n; digits != 0; digits &= digits - 1) {
      const unsigned k = static_cast<unsigned>(std::countr_zero(digits));
      if ((x & ((std::uint64_t{1} << k) - 1)) != 0) break;  // x not in I_k
      const Int term = Int(std::int64_t{1} << k);
      if ((x >> k) & 1u)
        total -= term;  // r_k(x) = -1
      else
        total += term;
    }
    d[i] = walsh_sign_negative(n, x) ? Int(-total) : total;
  }
  return d;
}

inline StepFunction dirichlet_direct(std::uint64_t n, unsigned resolution) {
  const auto v = dirichlet_direct_values<std::int64_t>(n, resolution);
  return StepFunction::from_integers<std::int64_t>(resolution, v);
}
inline StepFunction dirichlet_direct(std::uint64_t n) { return dirichlet_direct(n, high_bit(n) + 1); }

inline StepFunction dirichlet_closed(std::uint64_t n, unsigned resolution) {
  const auto v = dirichlet_closed_values<std::int64_t>(n, resolution);
  return StepFunction::from_integers<std::int64_t>(resolution, v);
}
inline StepFunction dirichlet_closed(std::uint64_t n) { return dirichlet_closed(n, high_bit(n) + 1); }

/// D_{2^m} = 2^m on I_m, 0 elsewhere; needs only resolution m.
inline StepFunction dirichlet_power_of_two(unsigned m, unsigned resolution) {
  detail::require_resolution(resolution);
  if (m > resolution) throw std::invalid_argument("dirichlet_power_of_two: m exceeds the resolution");
  std::vector<BigInt> v(std::size_t{1} << resolution, BigInt(0));
  const std::size_t width = std::size_t{1} << (resolution - m);
  for (std::size_t i = 0; i < width; ++i) v[i] = pow2(m);
  return StepFunction(resolution, std::move(v), 0);
}

/// Exact Lebesgue constant ||D_n||_1 from integer kernel values at resolution N.
template <class Int>
DyadicRational kernel_l1_norm(const std::vector<Int>& values, unsigned resolution) {
  Int total(0);
  for (const Int& v : values) total += v < 0 ? Int(-v) : v;
  return DyadicRational(BigInt(total), resolution);
}

/// Produces D_1, D_2, ... at a fixed resolution by adding one Walsh function
/// per step.
class DirichletAccumulator {
 public:
  explicit DirichletAccumulator(unsigned resolution)
      : resolution_(resolution), rev_(bit_reverse_table(resolution)), values_(rev_.size(), 0) {}

  /// Advances from D_n to D_{n+1}; returns n+1.
  std::uint64_t advance() {
    if (n_ >> resolution_ != 0) throw std::out_of_range("DirichletAccumulator: n exceeds 2^N");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += walsh_sign_negative(n_, rev_[i]) ? -1 : 1;
    return ++n_;
  }
  std::uint64_t n() const { return n_; }
  unsigned resolution() const { return resolution_; }
  const std::vector<std::int64_t>& values() const { return values_; }

 private:
  unsigned resolution_;
  std::vector<std::uint32_t> rev_;
  std::vector<std::int64_t> values_;
  std::uint64_t n_ = 0;
};

}  // namespace walsh
