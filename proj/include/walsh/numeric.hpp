#pragma once

// Exact number types shared by every module: arbitrary-precision integers,
// general rationals, dyadic rationals and the exponent p of L_p / H_p.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace walsh {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using int128 = __int128;

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

inline BigInt pow2(unsigned k) { return BigInt(1) << k; }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& r) { return r.convert_to<double>(); }

/// Decimal rendering with 15 significant digits, the precision used in reports.
inline std::string decimal_string(double x) {
  std::ostringstream os;
  os << std::setprecision(15) << x;
  return os.str();
}

/// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string fraction_string(const Rational& r) {
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

/// Exponent p of an L_p, weak-L_p or H_p functional, stored as a reduced
/// positive fraction.
class Exponent {
 public:
  Exponent() = default;
  Exponent(std::int64_t num, std::int64_t den = 1) {
    if (den == 0 || num == 0 || (num < 0) != (den < 0))
      throw std::invalid_argument("exponent p must be a positive rational");
    if (num < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  /// Accepts "2", "1/2" or a finite decimal such as "0.5".
  static Exponent parse(std::string_view text) {
    const std::string s(text);
    try {
      if (auto slash = s.find('/'); slash != std::string::npos)
        return Exponent(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
      if (auto dot = s.find('.'); dot != std::string::npos) {
        const std::string frac = s.substr(dot + 1);
        if (frac.size() > 9) throw std::invalid_argument("too many decimals");
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const std::int64_t whole = dot == 0 ? 0 : std::stoll(s.substr(0, dot));
        const std::int64_t part = frac.empty() ? 0 : std::stoll(frac);
        return Exponent(whole * den + part, den);
      }
      return Exponent(std::stoll(s), 1);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("cannot parse exponent '" + s + "'");
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("exponent '" + s + "' out of range");
    }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// 1/p - 1 as an exact rational.
  Rational reciprocal_minus_one() const { return Rational(den_ - num_, num_); }
  std::string str() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  std::int64_t num_ = 1;
  std::int64_t den_ = 1;
};

/// Exact value numerator / 2^exponent. Canonical form: odd numerator, or
/// numerator 0 with exponent 0.
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(BigInt numerator, unsigned exponent = 0) : num_(std::move(numerator)), exp_(exponent) {
    canonicalize();
  }
  DyadicRational(long long value) : num_(value) {}

  const BigInt& numerator() const { return num_; }
  unsigned exponent() const { return exp_; }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }

  /// Numerator after rescaling to a larger exponent.
  BigInt numerator_at(unsigned exponent) const {
    if (exponent < exp_) throw std::invalid_argument("numerator_at: exponent below canonical exponent");
    return num_ << (exponent - exp_);
  }

  Rational to_rational() const { return Rational(num_, pow2(exp_)); }
  double to_double() const { return walsh::to_double(to_rational()); }

  /// Serialized form "<numerator>/2^<exponent>".
  std::string str() const { return num_.str() + "/2^" + std::to_string(exp_); }
  /// Lowest-terms fraction such as "3/2".
  std::string fraction() const { return fraction_string(to_rational()); }

  /// Parses "<numerator>/2^<exponent>" or a plain integer.
  static DyadicRational parse(std::string_view text) {
    std::string s(text);
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
    s = s.substr(start);
    const auto slash = s.find('/');
    const std::string num_text = s.substr(0, slash);
    if (num_text.empty() || num_text.find_first_not_of("+-0123456789") != std::string::npos ||
        num_text.find_first_of("0123456789") == std::string::npos)
      throw std::invalid_argument("malformed dyadic rational '" + s + "'");
    BigInt num(num_text.front() == '+' ? num_text.substr(1) : num_text);
    if (slash == std::string::npos) return DyadicRational(std::move(num));
    const std::string den = s.substr(slash + 1);
    if (den.size() < 3 || den.compare(0, 2, "2^") != 0 ||
        den.find_first_not_of("0123456789", 2) != std::string::npos)
      throw std::invalid_argument("malformed dyadic denominator in '" + s + "'");
    const unsigned long e = std::stoul(den.substr(2));
    if (e > 1u << 20) throw std::invalid_argument("dyadic exponent too large in '" + s + "'");
    return DyadicRational(std::move(num), static_cast<unsigned>(e));
  }

  friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
    const unsigned e = std::max(a.exp_, b.exp_);
    return DyadicRational(a.numerator_at(e) + b.numerator_at(e), e);
  }
  friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) {
    const unsigned e = std::max(a.exp_, b.exp_);
    return DyadicRational(a.numerator_at(e) - b.numerator_at(e), e);
  }
  friend DyadicRational operator*(const DyadicRational& a, const DyadicRational& b) {
    return DyadicRational(a.num_ * b.num_, a.exp_ + b.exp_);
  }
  DyadicRational operator-() const { return DyadicRational(-num_, exp_); }
  DyadicRational& operator+=(const DyadicRational& o) { return *this = *this + o; }
  DyadicRational& operator-=(const DyadicRational& o) { return *this = *this - o; }
  DyadicRational& operator*=(const DyadicRational& o) { return *this = *this * o; }

  /// Multiplication by 2^-k.
  DyadicRational scaled_down(unsigned k) const { return DyadicRational(num_, exp_ + k); }

  friend DyadicRational abs(const DyadicRational& a) { return DyadicRational(boost::multiprecision::abs(a.num_), a.exp_); }

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
    const unsigned e = std::max(a.exp_, b.exp_);
    const int c = a.numerator_at(e).compare(b.numerator_at(e));
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const DyadicRational& d) { return os << d.str(); }

 private:
  void canonicalize() {
    if (num_.is_zero()) {
      exp_ = 0;
      return;
    }
    const unsigned shift = std::min<unsigned>(static_cast<unsigned>(boost::multiprecision::lsb(boost::multiprecision::abs(num_))), exp_);
    num_ >>= shift;  // exact: the low `shift` bits are zero
    exp_ -= shift;
  }

  BigInt num_;
  unsigned exp_ = 0;
};

namespace detail {

/// Bit length of |x| (0 for x = 0).
inline unsigned bit_length(const BigInt& x) {
  return x.is_zero() ? 0u : static_cast<unsigned>(boost::multiprecision::msb(boost::multiprecision::abs(x))) + 1u;
}

/// True when every intermediate of magnitude below 2^bits fits a signed int128.
inline bool fits_int128(unsigned bits) { return bits <= 125; }

inline int128 abs128(int128 x) { return x < 0 ? -x : x; }

}  // namespace detail

}  // namespace walsh
