#pragma once

// Binary-expansion characters of natural numbers: lowest and highest set
// bit, their spread, the variation V(n), maximal runs of one-digits and the
// boundary sets built from those runs over a window [2^s, 2^{s+1}).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace walsh {

inline constexpr std::uint64_t kMaxIndex = std::uint64_t{1} << 63;  // exclusive

namespace detail {

inline void require_index(std::uint64_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": n must be at least 1");
  if (n >= kMaxIndex) throw std::invalid_argument(std::string(what) + ": n must be below 2^63");
}

}  // namespace detail

/// [n]: position of the lowest one-digit.
inline unsigned low_bit(std::uint64_t n) {
  detail::require_index(n, "low_bit");
  return static_cast<unsigned>(std::countr_zero(n));
}

/// |n|: position of the highest one-digit.
inline unsigned high_bit(std::uint64_t n) {
  detail::require_index(n, "high_bit");
  return static_cast<unsigned>(std::bit_width(n) - 1);
}

/// rho(n) = |n| - [n].
inline unsigned gap(std::uint64_t n) { return high_bit(n) - low_bit(n); }

/// V(n) = n_0 + sum_k |n_k - n_{k-1}|. Every digit change is one bit of n ^ (n << 1).
inline unsigned variation(std::uint64_t n) {
  detail::require_index(n, "variation");
  return static_cast<unsigned>(std::popcount(n ^ (n << 1)));
}

struct IndexProfile {
  std::uint64_t n = 0;
  std::vector<std::uint8_t> digits;  // digits[j] = n_j, j = 0 .. high
  unsigned low = 0;
  unsigned high = 0;
  unsigned gap = 0;
  unsigned variation = 0;

  /// Digits written most significant first, e.g. "101" for 5.
  std::string binary() const {
    std::string s;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) s.push_back(*it ? '1' : '0');
    return s;
  }
};

inline IndexProfile index_profile(std::uint64_t n) {
  detail::require_index(n, "index_profile");
  IndexProfile p;
  p.n = n;
  p.low = low_bit(n);
  p.high = high_bit(n);
  p.gap = p.high - p.low;
  p.variation = variation(n);
  p.digits.resize(p.high + 1);
  for (unsigned j = 0; j <= p.high; ++j) p.digits[j] = static_cast<std::uint8_t>((n >> j) & 1u);
  return p;
}

/// A maximal run of one-digits occupying positions first .. last.
struct Block {
  unsigned first = 0;
  unsigned last = 0;
  friend bool operator==(const Block&, const Block&) = default;
};

struct BlockDecomposition {
  std::uint64_t n = 0;
  std::vector<Block> blocks;  // increasing, separated by at least one zero digit

  std::uint64_t reassemble() const {
    std::uint64_t total = 0;
    for (const Block& b : blocks)
      for (unsigned k = b.first; k <= b.last; ++k) total += std::uint64_t{1} << k;
    return total;
  }
};

inline BlockDecomposition blocks(std::uint64_t n) {
  detail::require_index(n, "blocks");
  BlockDecomposition d;
  d.n = n;
  std::uint64_t rest = n;
  while (rest != 0) {
    const unsigned first = static_cast<unsigned>(std::countr_zero(rest));
    const unsigned run = static_cast<unsigned>(std::countr_one(rest >> first));
    d.blocks.push_back({first, first + run - 1});
    rest &= ~(((run == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << run) - 1)) << first);
  }
  return d;
}

namespace detail {

inline void require_window(std::span<const std::uint64_t> indices, unsigned s) {
  if (indices.empty()) throw std::invalid_argument("window: index list is empty");
  if (s >= 63) throw std::invalid_argument("window: s must be below 63");
  const std::uint64_t lo = std::uint64_t{1} << s;
  for (std::uint64_t n : indices)
    if (n < lo || n >= 2 * lo)
      throw std::invalid_argument("window: index " + std::to_string(n) + " outside [2^" + std::to_string(s) +
                                  ", 2^" + std::to_string(s + 1) + ")");
}

}  // namespace detail

/// Union A_s of all block endpoints of a family of indices in [2^s, 2^{s+1}).
struct BoundarySet {
  unsigned s = 0;
  std::vector<unsigned> members;  // sorted, distinct
  std::size_t cardinality() const { return members.size(); }
};

inline BoundarySet boundary_set(std::span<const std::uint64_t> indices, unsigned s) {
  detail::require_window(indices, s);
  std::set<unsigned> endpoints;
  for (std::uint64_t n : indices)
    for (const Block& b : blocks(n).blocks) {
      endpoints.insert(b.first);
      endpoints.insert(b.last);
    }
  return {s, std::vector<unsigned>(endpoints.begin(), endpoints.end())};
}

/// s_-, s_+ and rho_s of a window family.
struct WindowProfile {
  unsigned s = 0;
  std::vector<std::uint64_t> indices;  // sorted
  unsigned s_minus = 0;
  unsigned s_plus = 0;
  unsigned rho_s = 0;
};

inline WindowProfile window_profile(std::span<const std::uint64_t> indices, unsigned s) {
  detail::require_window(indices, s);
  WindowProfile w;
  w.s = s;
  w.indices.assign(indices.begin(), indices.end());
  std::sort(w.indices.begin(), w.indices.end());
  w.s_minus = s;
  for (std::uint64_t n : w.indices) w.s_minus = std::min(w.s_minus, low_bit(n));
  w.s_plus = s;
  w.rho_s = w.s_plus - w.s_minus;
  return w;
}

}  // namespace walsh
