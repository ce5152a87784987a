#pragma once

// Denominator weights w(n) for weighted maximal operators sup_n |S_n f| / w(n)
// and the index sets those suprema range over.

#include "walsh/dyadic_index.hpp"
#include "walsh/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace walsh {

/// Per-window index lists: window s holds indices in [2^s, 2^{s+1}).
class WindowFamily {
 public:
  WindowFamily() = default;

  void add(unsigned s, std::vector<std::uint64_t> indices) {
    boundary_set(indices, s);  // validates the window
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    windows_[s] = std::move(indices);
  }

  /// {2^s} for every s <= s_max.
  static WindowFamily powers(unsigned s_max) {
    WindowFamily f;
    for (unsigned s = 0; s <= s_max; ++s) f.add(s, {std::uint64_t{1} << s});
    return f;
  }

  /// {2^{s+1} - 1} for every s <= s_max.
  static WindowFamily all_ones(unsigned s_max) {
    WindowFamily f;
    for (unsigned s = 0; s <= s_max; ++s) f.add(s, {(std::uint64_t{1} << (s + 1)) - 1});
    return f;
  }

  const std::map<unsigned, std::vector<std::uint64_t>>& windows() const { return windows_; }
  bool empty() const { return windows_.empty(); }

  std::vector<std::uint64_t> members() const {
    std::vector<std::uint64_t> all;
    for (const auto& [s, list] : windows_) all.insert(all.end(), list.begin(), list.end());
    std::sort(all.begin(), all.end());
    return all;
  }

  bool contains(std::uint64_t n) const {
    if (n == 0) return false;
    auto it = windows_.find(high_bit(n));
    return it != windows_.end() && std::binary_search(it->second.begin(), it->second.end(), n);
  }

  /// |A_s| for every declared window.
  std::map<unsigned, std::size_t> boundary_cardinalities() const {
    std::map<unsigned, std::size_t> out;
    for (const auto& [s, list] : windows_) out[s] = boundary_set(list, s).cardinality();
    return out;
  }

 private:
  std::map<unsigned, std::vector<std::uint64_t>> windows_;
};

/// Exact value when the weight is rational, plus its binary64 rounding.
struct WeightValue {
  std::optional<Rational> exact;
  double approx = 0;
};

class WeightFamily {
 public:
  enum class Kind { variation, polynomial, dyadic_gap, gap_phi, eps_log, window_gap, boundary_card, custom };
  using Phi = std::function<double(unsigned)>;

  /// w(n) = V(n).
  static WeightFamily variation() { return WeightFamily(Kind::variation); }
  /// w(n) = (n+1)^(1/p-1).
  static WeightFamily polynomial(Exponent p) { return with_p(Kind::polynomial, p); }
  /// w(n) = 2^(rho(n)(1/p-1)).
  static WeightFamily dyadic_gap(Exponent p) { return with_p(Kind::dyadic_gap, p); }
  /// w(n) = 2^(rho(n)(1/p-1)) phi(rho(n)).
  static WeightFamily gap_phi(Exponent p, Phi phi, std::string label = "phi") {
    if (!phi) throw std::invalid_argument("gap_phi: phi must be callable");
    WeightFamily f = with_p(Kind::gap_phi, p);
    f.phi_ = std::move(phi);
    f.phi_label_ = std::move(label);
    return f;
  }
  /// w(n) = 2^(rho(n)(1/p-1)) (rho(n) log2^(1+eps) rho(n))^(1/p), defined for rho(n) >= 2.
  static WeightFamily eps_log(Exponent p, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("eps_log: epsilon must be positive");
    WeightFamily f = with_p(Kind::eps_log, p);
    f.eps_ = eps;
    return f;
  }
  /// w(n) = 2^(rho_s(n)(1/p-1)) with rho_s taken over the window containing n.
  static WeightFamily window_gap(Exponent p, WindowFamily windows) {
    WeightFamily f = with_p(Kind::window_gap, p);
    f.set_windows(std::move(windows));
    return f;
  }
  /// w(n) = |A_{|n|}| over the declared windows.
  static WeightFamily boundary_card(WindowFamily windows) {
    WeightFamily f(Kind::boundary_card);
    f.set_windows(std::move(windows));
    return f;
  }
  /// Explicit positive table n -> w(n).
  static WeightFamily custom(std::map<std::uint64_t, Rational> table) {
    for (const auto& [n, w] : table)
      if (n == 0 || w <= 0) throw std::invalid_argument("custom weights: indices must be >= 1 and weights > 0");
    WeightFamily f(Kind::custom);
    f.table_ = std::move(table);
    return f;
  }

  Kind kind() const { return kind_; }
  const Exponent& p() const { return p_; }
  const WindowFamily& windows() const { return windows_; }
  const std::map<std::uint64_t, Rational>& table() const { return table_; }

  std::string name() const {
    switch (kind_) {
      case Kind::variation: return "variation";
      case Kind::polynomial: return "polynomial(p=" + p_.str() + ")";
      case Kind::dyadic_gap: return "dyadic-gap(p=" + p_.str() + ")";
      case Kind::gap_phi: return "gap-" + phi_label_ + "(p=" + p_.str() + ")";
      case Kind::eps_log: return "eps-log(p=" + p_.str() + ",eps=" + decimal_string(eps_) + ")";
      case Kind::window_gap: return "window-gap(p=" + p_.str() + ")";
      case Kind::boundary_card: return "boundary-card";
      case Kind::custom: return "custom";
    }
    return "unknown";
  }

  /// Whether w(n) is defined (the family may restrict its index range).
  bool admissible(std::uint64_t n) const {
    if (n == 0 || n >= kMaxIndex) return false;
    switch (kind_) {
      case Kind::eps_log: return gap(n) >= 2;
      case Kind::window_gap:
      case Kind::boundary_card: return windows_.contains(n);
      case Kind::custom: return table_.contains(n);
      default: return true;
    }
  }

  /// Every weight is a rational number (so maximal functions stay exact).
  bool exact() const {
    switch (kind_) {
      case Kind::variation:
      case Kind::boundary_card:
      case Kind::custom: return true;
      case Kind::polynomial:
      case Kind::dyadic_gap:
      case Kind::window_gap: return p_.num() == 1;  // 1/p - 1 is a natural number
      default: return false;
    }
  }

  WeightValue value(std::uint64_t n) const {
    if (!admissible(n))
      throw std::invalid_argument("weight " + name() + " is undefined at n = " + std::to_string(n));
    WeightValue v;
    switch (kind_) {
      case Kind::variation: v.exact = Rational(walsh::variation(n)); break;
      case Kind::polynomial:
        if (exact()) v.exact = Rational(boost::multiprecision::pow(BigInt(n) + 1, integer_power()));
        else v.approx = std::pow(static_cast<double>(n) + 1.0, power());
        break;
      case Kind::dyadic_gap:
        if (exact()) v.exact = Rational(pow2(gap(n) * integer_power()));
        else v.approx = gap_factor(gap(n));
        break;
      case Kind::gap_phi: v.approx = gap_factor(gap(n)) * phi_(gap(n)); break;
      case Kind::eps_log: v.approx = eps_log_value(gap(n)); break;
      case Kind::window_gap: {
        const unsigned rho = window_rho_.at(high_bit(n));
        if (exact()) v.exact = Rational(pow2(rho * integer_power()));
        else v.approx = gap_factor(rho);
        break;
      }
      case Kind::boundary_card: v.exact = Rational(cardinalities_.at(high_bit(n))); break;
      case Kind::custom: v.exact = table_.at(n); break;
    }
    if (v.exact) v.approx = to_double(*v.exact);
    if (!(v.approx > 0)) throw std::domain_error("weight " + name() + " is not positive at n = " + std::to_string(n));
    return v;
  }

  /// Whether sup over all n >= 1 is meaningful (weights defined for all large n).
  bool supports_full_range() const {
    return kind_ != Kind::window_gap && kind_ != Kind::boundary_card && kind_ != Kind::custom;
  }

  /// inf_{n >= 2^N, admissible} w(n), in closed form. Needed because
  /// S_n f = f for every n >= 2^N.
  WeightValue tail_infimum(unsigned resolution) const {
    if (!supports_full_range()) throw std::invalid_argument("weight " + name() + " has no tail over the full index range");
    WeightValue v;
    switch (kind_) {
      case Kind::variation: v.exact = Rational(2); break;  // V(2^m) = 2
      case Kind::polynomial:
        if (exact()) v.exact = Rational(boost::multiprecision::pow(pow2(resolution) + 1, integer_power()));
        else v.approx = std::pow(std::ldexp(1.0, static_cast<int>(resolution)) + 1.0, power());
        break;
      case Kind::dyadic_gap:
        v.exact = Rational(1);  // rho(2^m) = 0
        break;
      case Kind::gap_phi: {
        double best = std::numeric_limits<double>::infinity();
        for (unsigned rho = 0; rho <= 62; ++rho) best = std::min(best, gap_factor(rho) * phi_(rho));
        v.approx = best;
        break;
      }
      case Kind::eps_log: {
        double best = std::numeric_limits<double>::infinity();
        for (unsigned rho = 2; rho <= 62; ++rho) best = std::min(best, eps_log_value(rho));
        v.approx = best;
        break;
      }
      default: break;
    }
    if (v.exact) v.approx = to_double(*v.exact);
    if (!(v.approx > 0)) throw std::domain_error("weight " + name() + " has a non-positive tail infimum");
    return v;
  }

 private:
  explicit WeightFamily(Kind k) : kind_(k) {}
  static WeightFamily with_p(Kind k, Exponent p) {
    if (p.num() > p.den()) throw std::invalid_argument("weight families take 0 < p <= 1");
    WeightFamily f(k);
    f.p_ = p;
    return f;
  }

  void set_windows(WindowFamily windows) {
    if (windows.empty()) throw std::invalid_argument("window weights need at least one declared window");
    windows_ = std::move(windows);
    cardinalities_ = windows_.boundary_cardinalities();
    for (const auto& [s, list] : windows_.windows()) window_rho_[s] = window_profile(list, s).rho_s;
  }

  double power() const { return p_.reciprocal_minus_one().convert_to<double>(); }
  unsigned integer_power() const { return static_cast<unsigned>(p_.den() - 1); }  // valid when p = 1/k
  double gap_factor(unsigned rho) const { return std::exp2(static_cast<double>(rho) * power()); }
  double eps_log_value(unsigned rho) const {
    const double r = static_cast<double>(rho);
    return gap_factor(rho) * std::pow(r * std::pow(std::log2(r), 1.0 + eps_), 1.0 / p_.value());
  }

  Kind kind_;
  Exponent p_{1};
  double eps_ = 0;
  Phi phi_;
  std::string phi_label_;
  WindowFamily windows_;
  std::map<unsigned, std::size_t> cardinalities_;
  std::map<unsigned, unsigned> window_rho_;
  std::map<std::uint64_t, Rational> table_;
};

/// Indices a maximal operator ranges over: all n >= 1, an explicit finite
/// list, or a window family.
class IndexSet {
 public:
  static IndexSet full() { return IndexSet(); }
  static IndexSet list(std::vector<std::uint64_t> indices) {
    if (indices.empty()) throw std::invalid_argument("index set is empty");
    for (std::uint64_t n : indices)
      if (n == 0) throw std::invalid_argument("index set members must be at least 1");
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    IndexSet s;
    s.members_ = std::move(indices);
    s.bounded_ = true;
    return s;
  }
  static IndexSet windows(const WindowFamily& family) {
    if (family.empty()) throw std::invalid_argument("index set is empty");
    return list(family.members());
  }

  bool unbounded() const { return !bounded_; }
  const std::vector<std::uint64_t>& members() const { return members_; }

  /// Admissible members in [1, limit].
  std::vector<std::uint64_t> members_up_to(std::uint64_t limit, const WeightFamily& w) const {
    std::vector<std::uint64_t> out;
    if (!bounded_) {
      for (std::uint64_t n = 1; n <= limit; ++n)
        if (w.admissible(n)) out.push_back(n);
      return out;
    }
    for (std::uint64_t n : members_) {
      if (n > limit) break;
      if (!w.admissible(n)) throw std::invalid_argument("weight " + w.name() + " is undefined at index " + std::to_string(n));
      out.push_back(n);
    }
    return out;
  }

  /// Members above limit (finite sets only).
  std::vector<std::uint64_t> members_above(std::uint64_t limit) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n : members_)
      if (n > limit) out.push_back(n);
    return out;
  }

 private:
  std::vector<std::uint64_t> members_;
  bool bounded_ = false;
};

}  // namespace walsh
