// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "walsh/walsh.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace walsh;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Verdict {
  bool pass;
  std::string detail;
};

// V(n) by its defining sum n_0 + sum_{k>=1} |n_k - n_{k-1}|.
unsigned defining_variation(std::uint64_t n) {
  unsigned v = n & 1u;
  for (unsigned k = 1; k < 64; ++k) v += ((n >> k) & 1u) != ((n >> (k - 1)) & 1u);
  return v;
}

Verdict kernel_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t mismatches = 0;
  // literal term-by-term kernels for n <= 512, then the same sum accumulated
  // one Walsh function at a time per resolution
  for (std::uint64_t n = 1; n <= 512; ++n) mismatches += !(dirichlet_direct(n) == dirichlet_closed(n));
  for (std::uint64_t n = 513; n <= 4096; n += 97) mismatches += !(dirichlet_direct(n) == dirichlet_closed(n));
  for (unsigned res = 11; res <= 13; ++res) {
    DirichletAccumulator acc(res);
    const std::uint64_t lo = std::uint64_t{1} << (res - 1);
    const std::uint64_t hi = std::min<std::uint64_t>((std::uint64_t{1} << res) - 1, 4096);
    while (acc.n() < hi) {
      const std::uint64_t n = acc.advance();
      if (n >= lo) mismatches += acc.values() != dirichlet_closed_values<std::int64_t>(n, res);
    }
  }
  const double t = seconds_since(t0);
  std::ostringstream os;
  os << "n in [1, 4096], " << mismatches << " mismatches, " << t << " s";
  return {mismatches == 0 && t < 60, os.str()};
}

Verdict paley_bounds() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = lebesgue_sweep(8192, 1000, 0);
  std::size_t violations = 0;
  for (const auto& r : rows) violations += !r.lower_ok + !r.upper_ok;
  // recheck the inequalities from the stored norms
  for (const auto& r : rows) {
    const Rational v(defining_variation(r.n));
    const Rational norm = r.norm.to_rational();
    violations += !(v / 8 <= norm && norm <= v);
  }
  const double t = seconds_since(t0);
  std::ostringstream os;
  os << rows.size() << " indices, " << violations << " violations, " << t << " s";
  return {violations == 0 && rows.size() == 9192 && t < 300, os.str()};
}

Verdict block_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t mismatches = 0;
  for (std::uint64_t n = 1; n < (std::uint64_t{1} << 16); ++n) {
    const unsigned v = defining_variation(n);
    mismatches += v != 2 * blocks(n).blocks.size();
    mismatches += v != variation(n);
  }
  const double t = seconds_since(t0);
  std::ostringstream os;
  os << "n < 2^16, " << mismatches << " mismatches, " << t << " s";
  return {mismatches == 0 && t < 10, os.str()};
}

Verdict transform_correctness() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t failures = 0;
  Rng rng(20240501);
  for (int trial = 0; trial < 500; ++trial) {
    const unsigned res = static_cast<unsigned>(uniform_below(rng, 11));
    std::vector<BigInt> v(std::size_t{1} << res);
    for (auto& x : v) x = uniform_between(rng, -1000000, 1000000);
    const StepFunction f(res, std::move(v), static_cast<unsigned>(uniform_below(rng, 12)));
    const Spectrum s = wht(f);
    failures += !(inverse_wht(s) == f);
    Rational energy = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const Rational c = s.value(k).to_rational();
      energy += c * c;
    }
    Rational l2 = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Rational x = f.value(i).to_rational();
      l2 += x * x;
    }
    failures += energy != l2 / Rational(pow2(res));
  }
  const double t = seconds_since(t0);
  std::ostringstream os;
  os << "500 functions, " << failures << " failures, " << t << " s";
  return {failures == 0 && t < 30, os.str()};
}

Verdict counterexample_normalization() {
  std::size_t failures = 0;
  for (unsigned nk = 3; nk <= 12; ++nk) failures += !(h1_norm(Martingale(counterexample(nk, nk + 1))) == DyadicRational(1));
  std::ostringstream os;
  os << "nk in [3, 12], " << failures << " norms differ from 1";
  return {failures == 0, os.str()};
}

Verdict blowup() {
  std::size_t failures = 0;
  std::ostringstream os;
  for (unsigned nk = 3; nk <= 14; ++nk) failures += blowup_ratio(nk, BlowupMode::witness).ratio < Rational(nk, 8);
  Rational previous = 0;
  double t13 = 0;
  for (unsigned nk = 4; nk <= 12; ++nk) {
    const auto t0 = std::chrono::steady_clock::now();
    const Rational r = blowup_ratio(nk, BlowupMode::full).ratio;
    if (nk == 12) t13 = seconds_since(t0);
    failures += r < Rational(nk, 8);
    failures += r <= previous;
    previous = r;
  }
  os << "witness nk in [3, 14], full nk in [4, 12], " << failures << " failures, full at N=13 " << t13 << " s";
  return {failures == 0 && t13 < 300, os.str()};
}

Verdict weak_type() {
  const auto t0 = std::chrono::steady_clock::now();
  const WeakTypeSweep s = weak_type_sweep(1000, 4, 10, 12, 0);
  const double t = seconds_since(t0);
  const Rational low = s.max_over(4, 6);
  const Rational high = s.max_over(8, 10);
  const bool trend_ok = high <= Rational(3, 2) * low;
  const bool bounded = s.global_max <= Rational(1, 2);
  std::ostringstream os;
  os << "per-M max:";
  for (const auto& r : s.per_depth) os << " M" << r.depth << "=" << to_double(r.max_statistic);
  os << "; max M8-10 / max M4-6 = " << to_double(high / low) << " (limit 1.5); global max " << to_double(s.global_max)
     << " <= 1/2: " << (bounded ? "yes" : "no") << "; " << t << " s";
  return {trend_ok && bounded && t < 600, os.str()};
}

Verdict atomic_upper_bound() {
  std::size_t violations = 0;
  Rng rng(7);
  const unsigned res = 8;
  for (int trial = 0; trial < 200; ++trial) {
    AtomicCombination c;
    const std::size_t k = 1 + uniform_below(rng, 5);
    for (std::size_t j = 0; j < k; ++j) {
      const unsigned m = static_cast<unsigned>(uniform_below(rng, res));
      const std::uint64_t anchor = m == 0 ? 0 : uniform_below(rng, std::uint64_t{1} << m);
      c.atoms.push_back(random_atom(rng(), Exponent(1), m, res, anchor));
      c.weights.emplace_back(BigInt(uniform_between(rng, -64, 64)), static_cast<unsigned>(uniform_below(rng, 5)));
    }
    DyadicRational total(0);
    for (const auto& w : c.weights) total = total + abs(w);
    violations += h1_norm(build_from_atoms(c, res)) > total;
  }
  std::ostringstream os;
  os << "200 combinations, " << violations << " violations";
  return {violations == 0, os.str()};
}

Verdict partial_sum_norm() {
  const auto t0 = std::chrono::steady_clock::now();
  const PartialSumNormSweep s = partial_sum_norm_sweep(2048, 200, 0);
  const Rational full = s.constant_up_to(2048);
  const Rational head = s.constant_up_to(512);
  std::ostringstream os;
  os << "constant n<=2048 " << to_double(full) << ", n<=512 " << to_double(head) << ", " << seconds_since(t0) << " s";
  return {full > 0 && full <= 2 * head, os.str()};
}

Verdict determinism() {
  std::size_t differences = 0;
  auto twice = [&](const std::function<std::string(unsigned)>& csv) { differences += csv(1) != csv(3); };
  twice([](unsigned th) { return csv_string(weak_type_report(weak_type_sweep(40, 3, 6, 9, 5, th), 40)); });
  twice([](unsigned th) { return csv_string(lebesgue_report(lebesgue_sweep(1024, 100, 5, th), 1024, 100, 5)); });
  twice([](unsigned th) { return csv_string(partial_sum_norm_report(partial_sum_norm_sweep(256, 30, 5, th))); });
  twice([](unsigned th) {
    return csv_string(conjecture_report(conjecture_explorer({"powers", "all-ones", "random:3"}, 7, 5, 6, th), 6));
  });
  twice([](unsigned) {
    std::vector<BlowupResult> r;
    for (unsigned nk = 3; nk <= 8; ++nk) r.push_back(blowup_ratio(nk, BlowupMode::automatic));
    return csv_string(blowup_report(r));
  });
  std::ostringstream os;
  os << "5 sweeps repeated with 1 and 3 threads, " << differences << " differ";
  return {differences == 0, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"AC1 kernel identity", kernel_identity},
      {"AC2 Lebesgue constant bounds", paley_bounds},
      {"AC3 block/variation identity", block_identity},
      {"AC4 transform inverse and Parseval", transform_correctness},
      {"AC5 counterexample normalization", counterexample_normalization},
      {"AC6 blow-up ratio", blowup},
      {"AC7 weak-type statistic", weak_type},
      {"AC8 atomic upper bound", atomic_upper_bound},
      {"AC9 partial-sum norm constant", partial_sum_norm},
      {"AC10 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
