#include "walsh/dyadic_domain.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "walsh/walsh_transform.hpp"

using namespace walsh;

namespace {

StepFunction ints(unsigned n, std::vector<std::int64_t> v) { return StepFunction::from_integers<std::int64_t>(n, v); }

}  // namespace

TEST(HaarIntegral, Examples) {
  EXPECT_EQ(haar_integral(indicator(CosetSelector::coset(1, 0), 1)), DyadicRational(BigInt(1), 1));
  EXPECT_EQ(haar_integral(ints(2, {4, 0, 0, 0})), DyadicRational(1));
  for (unsigned n = 1; n < 64; ++n) EXPECT_TRUE(haar_integral(walsh_function(n, 6)).is_zero()) << n;
}

TEST(Norms, Examples) {
  const StepFunction d3 = ints(2, {3, 1, 1, -1});
  EXPECT_EQ(l1_norm(d3), DyadicRational(BigInt(3), 1));
  for (std::uint64_t n = 0; n < 32; ++n) EXPECT_NEAR(lp_norm(walsh_function(n, 5), Exponent(2)), 1.0, 1e-12);
  for (unsigned m = 0; m < 10; ++m) EXPECT_EQ(l1_norm(dirichlet_power_of_two(m, 10)), DyadicRational(1));
  EXPECT_NEAR(lp_norm(d3, Exponent(1, 2)), std::pow((std::sqrt(3.0) + 3.0) / 4.0, 2.0), 1e-12);
}

TEST(WeakL1, Examples) {
  EXPECT_EQ(weak_l1(StepFunction::constant(3, DyadicRational(BigInt(-5), 2))), DyadicRational(BigInt(5), 2));
  for (unsigned m = 0; m < 8; ++m) EXPECT_EQ(weak_l1(dirichlet_power_of_two(m, 8)), DyadicRational(1));
  EXPECT_EQ(weak_l1(ints(2, {3, 1, -1, -1})), DyadicRational(1));
  EXPECT_EQ(weak_l1(ints(2, {3, 1, 1, -1})), DyadicRational(1));
  EXPECT_DOUBLE_EQ(weak_lp(ints(2, {3, 1, -1, -1}), Exponent(1)), 1.0);
  // restricted to the complement of I_1: values 1 and -1 on measure 1/2
  EXPECT_EQ(weak_l1(ints(2, {3, 1, 1, -1}), CosetSelector::outside(1)), DyadicRational(BigInt(1), 1));
  EXPECT_TRUE(weak_l1(StepFunction(4)).is_zero());
}

TEST(WeakL1, ChebyshevAndRefinement) {
  Rng rng(23);
  for (int t = 0; t < 300; ++t) {
    const unsigned n = static_cast<unsigned>(uniform_below(rng, 7));
    const StepFunction f = oracle::random_step(rng, n, 20, static_cast<unsigned>(uniform_below(rng, 4)));
    EXPECT_LE(weak_l1(f), l1_norm(f));
    const StepFunction g = f.refined(n + 2);
    EXPECT_EQ(weak_l1(g), weak_l1(f));
    EXPECT_EQ(l1_norm(g), l1_norm(f));
    EXPECT_EQ(haar_integral(g), haar_integral(f));
    const Exponent p(1, 2);
    EXPECT_NEAR(lp_norm(g, p), lp_norm(f, p), 1e-12 * (1 + lp_norm(f, p)));
    EXPECT_LE(weak_lp(f, p), lp_norm(f, p) * (1 + 1e-12));
    EXPECT_LE(weak_lp(f, Exponent(2)), lp_norm(f, Exponent(2)) * (1 + 1e-12));
    // exact RationalFunction route agrees
    EXPECT_EQ(weak_l1(to_rational_function(f)), weak_l1(f).to_rational());
    EXPECT_EQ(l1_norm(to_rational_function(f)), l1_norm(f).to_rational());
  }
}

TEST(WeakL1, MatchesThresholdEnumeration) {
  Rng rng(29);
  for (int t = 0; t < 200; ++t) {
    const StepFunction f = oracle::random_step(rng, 4, 6);
    const auto v = oracle::values(f);
    Rational best = 0;
    for (const Rational& level : v) {
      const Rational thr = boost::multiprecision::abs(level);
      if (thr == 0) continue;
      int count = 0;
      for (const Rational& x : v) count += boost::multiprecision::abs(x) >= thr;
      best = std::max(best, Rational(thr * count / 16));
    }
    EXPECT_EQ(weak_l1(f).to_rational(), best);
  }
}

TEST(Shells, Partition) {
  EXPECT_THROW(shell_decompose(0), std::invalid_argument);
  const auto one = shell_decompose(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].measure(), DyadicRational(BigInt(1), 1));
  for (unsigned m = 1; m <= 10; ++m) {
    const auto shells = shell_decompose(m);
    DyadicRational total(0);
    for (unsigned s = 0; s < m; ++s) {
      EXPECT_EQ(shells[s].measure(), DyadicRational(BigInt(1), s + 1));
      total = total + shells[s].measure();
    }
    EXPECT_EQ(total, DyadicRational(1) - DyadicRational(BigInt(1), m));
    // disjoint and covering the complement of I_M at resolution 10
    const CosetSelector out = CosetSelector::outside(m);
    for (std::uint64_t i = 0; i < 1024; ++i) {
      int hits = 0;
      for (const auto& sh : shells) hits += sh.contains(i, 10);
      EXPECT_EQ(hits, out.contains(i, 10) ? 1 : 0);
    }
  }
}

TEST(Shells, UnitPoints) {
  EXPECT_EQ(unit_point(0, 2), 0b10u);
  EXPECT_EQ(unit_point(1, 3), 0b010u);
  EXPECT_THROW(unit_point(3, 3), std::invalid_argument);
  for (unsigned m = 3; m < 8; ++m) EXPECT_TRUE(shell_decompose(m)[2].contains(unit_point(2, 8), 8));
  for (unsigned s = 0; s < 8; ++s) {
    EXPECT_EQ(shell_of(unit_point(s, 8), 8), s);
    const auto [lo, hi] = CosetSelector::coset(s + 1, 1).range(8);
    for (std::uint64_t i = 0; i < 256; ++i) {
      const bool prefix = (i >> (8 - s - 1)) == 1;  // 0^s 1
      EXPECT_EQ(i >= lo && i < hi, prefix);
    }
    EXPECT_EQ(lo, unit_point(s, 8));
  }
  EXPECT_EQ(shell_of(0, 8), std::nullopt);
}

TEST(StepFunctionIo, RoundTripAndErrors) {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const StepFunction f = oracle::random_step(rng, 3, 100, static_cast<unsigned>(uniform_below(rng, 5)));
    std::stringstream ss;
    write_step_function(ss, f);
    EXPECT_EQ(read_step_function(ss), f);
  }
  std::istringstream short_file("N=1\n1/2^0\n");
  EXPECT_THROW(read_step_function(short_file), std::invalid_argument);
  std::istringstream bad_header("M=1\n");
  EXPECT_THROW(read_step_function(bad_header), std::invalid_argument);
  std::istringstream too_big("N=31\n");
  EXPECT_THROW(read_step_function(too_big), std::out_of_range);
  std::istringstream extra("N=0\n1\n2\n");
  EXPECT_THROW(read_step_function(extra), std::invalid_argument);
  EXPECT_THROW(StepFunction(31), std::out_of_range);
}

TEST(StepFunction, ArithmeticAndRefinement) {
  Rng rng(37);
  for (int t = 0; t < 100; ++t) {
    const StepFunction f = oracle::random_step(rng, 3, 9, 2);
    const StepFunction g = oracle::random_step(rng, 5, 9, 1);
    const auto fv = oracle::values(f.refined(5));
    const auto gv = oracle::values(g);
    const auto sum = oracle::values(f + g);
    const auto diff = oracle::values(f - g);
    for (std::size_t i = 0; i < 32; ++i) {
      EXPECT_EQ(sum[i], fv[i] + gv[i]);
      EXPECT_EQ(diff[i], fv[i] - gv[i]);
    }
    EXPECT_TRUE(same_function(f, f.refined(6)));
    EXPECT_TRUE((f - f).is_zero());
  }
}
