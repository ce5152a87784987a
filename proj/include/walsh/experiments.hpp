#pragma once

// Experiment drivers: the blow-up counterexample, the weak-type sweep over
// random atoms, Lebesgue constants against V(n), partial-sum norms, and an
// exploratory run of boundary-set weighted operators. Each driver returns
// typed results and can render an ExperimentReport.

#include "walsh/dyadic_domain.hpp"
#include "walsh/dyadic_index.hpp"
#include "walsh/martingale.hpp"
#include "walsh/maximal.hpp"
#include "walsh/numeric.hpp"
#include "walsh/parallel.hpp"
#include "walsh/random.hpp"
#include "walsh/report.hpp"
#include "walsh/step_function.hpp"
#include "walsh/walsh_transform.hpp"
#include "walsh/weights.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace walsh {

namespace detail {

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

// ---- counterexample and blow-up ---------------------------------------------

inline constexpr unsigned kMinCounterexampleIndex = 3;
inline constexpr unsigned kMaxFullBlowupResolution = 15;
inline constexpr unsigned kAutoFullBlowupResolution = 13;

/// f = D_{2^(nk+1)} - D_{2^nk}: 2^nk on I_{nk+1}, -2^nk on I_nk \ I_{nk+1}.
inline StepFunction counterexample(unsigned nk, unsigned resolution) {
  if (nk < kMinCounterexampleIndex)
    throw std::invalid_argument("counterexample: n_k = " + std::to_string(nk) + " is below 3");
  if (resolution < nk + 1)
    throw std::invalid_argument("counterexample: resolution " + std::to_string(resolution) + " is below n_k + 1 = " +
                                std::to_string(nk + 1));
  detail::require_resolution(resolution);
  return dirichlet_power_of_two(nk + 1, resolution) - dirichlet_power_of_two(nk, resolution);
}

enum class BlowupMode { full, witness, automatic };

inline std::string to_string(BlowupMode m) {
  switch (m) {
    case BlowupMode::full: return "full";
    case BlowupMode::witness: return "witness";
    case BlowupMode::automatic: return "auto";
  }
  return "?";
}

inline BlowupMode parse_blowup_mode(const std::string& s) {
  if (s == "full") return BlowupMode::full;
  if (s == "witness") return BlowupMode::witness;
  if (s == "auto") return BlowupMode::automatic;
  throw std::invalid_argument("unknown blow-up mode '" + s + "' (expected full, witness or auto)");
}

struct BlowupResult {
  unsigned nk = 0;
  unsigned resolution = 0;
  BlowupMode mode = BlowupMode::full;  // the mode that produced the value (never automatic)
  Rational integral;                   // ||sup||_1
  DyadicRational h1;                   // ||f||_{H_1}
  Rational ratio;
};

/// Indices 2^nk + 2^s, 0 <= s < nk.
inline std::vector<std::uint64_t> witness_indices(unsigned nk) {
  std::vector<std::uint64_t> out;
  for (unsigned s = 0; s < nk; ++s) out.push_back((std::uint64_t{1} << nk) + (std::uint64_t{1} << s));
  return out;
}

/// ||sup_n |S_n f| / V(n)||_1 / ||f||_{H_1} for the counterexample. Full mode
/// takes the sup over every n >= 1; witness mode only over 2^nk + 2^s, which
/// gives an exact lower bound. Resolution 0 means nk + 1.
inline BlowupResult blowup_ratio(unsigned nk, BlowupMode mode, unsigned resolution = 0) {
  if (resolution == 0) resolution = nk + 1;
  if (mode == BlowupMode::automatic)
    mode = resolution <= kAutoFullBlowupResolution ? BlowupMode::full : BlowupMode::witness;
  if (mode == BlowupMode::full && resolution > kMaxFullBlowupResolution)
    throw std::out_of_range("blowup_ratio: full mode needs N <= " + std::to_string(kMaxFullBlowupResolution) +
                            ", got N = " + std::to_string(resolution));
  const StepFunction f = counterexample(nk, resolution);
  const IndexSet idx = mode == BlowupMode::full ? IndexSet::full() : IndexSet::list(witness_indices(nk));
  const RationalFunction sup = weighted_maximal(f, WeightFamily::variation(), idx);
  BlowupResult r;
  r.nk = nk;
  r.resolution = resolution;
  r.mode = mode;
  r.integral = l1_norm(sup);
  r.h1 = h1_norm(Martingale(f));
  r.ratio = r.integral / r.h1.to_rational();
  return r;
}

inline ExperimentReport blowup_report(const std::vector<BlowupResult>& results) {
  ExperimentReport rep;
  rep.name = "blowup";
  rep.columns = {"nk", "N", "mode", "h1_norm", "h1_norm_decimal", "ratio", "ratio_decimal", "nk_over_8", "ratio_ge_nk_over_8"};
  for (const auto& r : results) {
    std::vector<std::string> row{std::to_string(r.nk), std::to_string(r.resolution), to_string(r.mode)};
    ExperimentReport::exact_cells(row, r.h1.to_rational());
    ExperimentReport::exact_cells(row, r.ratio);
    const Rational bound(r.nk, 8);
    row.push_back(exact_string(bound));
    row.push_back(r.ratio >= bound ? "1" : "0");
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---- weak type over random atoms ---------------------------------------------

struct WeakTypeRow {
  unsigned depth = 0;
  std::size_t count = 0;
  Rational max_statistic;
  std::size_t argmax = 0;  // trial index attaining the maximum
};

struct WeakTypeSweep {
  unsigned resolution = 0;
  std::uint64_t seed = 0;
  std::vector<WeakTypeRow> per_depth;
  Rational global_max;

  /// Largest per-depth maximum over depths in [lo, hi].
  Rational max_over(unsigned lo, unsigned hi) const {
    Rational best = 0;
    for (const auto& r : per_depth)
      if (r.depth >= lo && r.depth <= hi && r.count > 0) best = std::max(best, r.max_statistic);
    return best;
  }
};

/// Seed of trial t at depth M.
inline std::uint64_t atom_seed(std::uint64_t seed, unsigned depth, std::size_t trial) {
  return derive_seed(seed, {depth, static_cast<std::uint64_t>(trial)});
}

inline WeakTypeSweep weak_type_sweep(std::size_t count, unsigned depth_lo, unsigned depth_hi, unsigned resolution,
                                     std::uint64_t seed, unsigned threads = 0) {
  if (depth_lo > depth_hi) throw std::invalid_argument("weak_type_sweep: empty depth range");
  if (depth_lo == 0) throw std::invalid_argument("weak_type_sweep: M must be at least 1");
  if (depth_hi >= resolution)
    throw std::invalid_argument("weak_type_sweep: M = " + std::to_string(depth_hi) + " must be below N = " +
                                std::to_string(resolution));
  detail::require_resolution(resolution);
  WeakTypeSweep out;
  out.resolution = resolution;
  out.seed = seed;
  out.global_max = 0;
  const std::size_t depths = depth_hi - depth_lo + 1;
  std::vector<Rational> stats(count * depths);
  parallel_for(stats.size(), threads, [&](std::size_t job) {
    const unsigned depth = depth_lo + static_cast<unsigned>(job / count);
    const std::size_t trial = job % count;
    const Atom a = random_atom(atom_seed(seed, depth, trial), Exponent(1), depth, resolution);
    stats[job] = weak_type_statistic(a);
  });
  for (std::size_t d = 0; d < depths; ++d) {
    WeakTypeRow row;
    row.depth = depth_lo + static_cast<unsigned>(d);
    row.count = count;
    row.max_statistic = 0;
    for (std::size_t t = 0; t < count; ++t)
      if (stats[d * count + t] > row.max_statistic) {
        row.max_statistic = stats[d * count + t];
        row.argmax = t;
      }
    out.global_max = std::max(out.global_max, row.max_statistic);
    out.per_depth.push_back(std::move(row));
  }
  return out;
}

inline ExperimentReport weak_type_report(const WeakTypeSweep& s, std::size_t count) {
  ExperimentReport rep;
  rep.name = "weaktype-sweep";
  rep.seed = s.seed;
  rep.parameter("count", count);
  rep.parameter("N", s.resolution);
  rep.parameter("weight", "variation");
  rep.columns = {"M", "atoms", "max_statistic", "max_statistic_decimal", "argmax_trial"};
  if (count == 0) return rep;
  for (const auto& r : s.per_depth) {
    std::vector<std::string> row{std::to_string(r.depth), std::to_string(r.count)};
    ExperimentReport::exact_cells(row, r.max_statistic);
    row.push_back(std::to_string(r.argmax));
    rep.rows.push_back(std::move(row));
  }
  std::vector<std::string> global{"all", std::to_string(count * s.per_depth.size())};
  ExperimentReport::exact_cells(global, s.global_max);
  global.push_back("");
  rep.rows.push_back(std::move(global));
  return rep;
}

// ---- Lebesgue constants ----------------------------------------------------------

struct LebesgueRow {
  std::uint64_t n = 0;
  unsigned variation = 0;
  DyadicRational norm;
  bool lower_ok = false;  // V(n)/8 <= ||D_n||_1
  bool upper_ok = false;  // ||D_n||_1 <= V(n)
  bool sampled = false;
};

/// ||D_n||_1 from the kernel values at resolution |n| + 1.
inline DyadicRational lebesgue_constant(std::uint64_t n) {
  const unsigned res = high_bit(n) + 1;
  return kernel_l1_norm(dirichlet_closed_values<std::int64_t>(n, res), res);
}

inline LebesgueRow lebesgue_row(std::uint64_t n, bool sampled) {
  LebesgueRow r;
  r.n = n;
  r.variation = variation(n);
  r.norm = lebesgue_constant(n);
  const Rational v(r.variation);
  const Rational norm = r.norm.to_rational();
  r.lower_ok = v / 8 <= norm;
  r.upper_ok = norm <= v;
  r.sampled = sampled;
  return r;
}

inline constexpr unsigned kLebesgueSampleBits = 20;

/// Every n <= n_max, then `samples` seeded n drawn uniformly from [1, 2^20].
inline std::vector<LebesgueRow> lebesgue_sweep(std::uint64_t n_max, std::size_t samples, std::uint64_t seed,
                                               unsigned threads = 0) {
  if (n_max >= (std::uint64_t{1} << 27)) throw std::out_of_range("lebesgue_sweep: n_max must be below 2^27");
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 1; n <= n_max; ++n) ns.push_back(n);
  Rng rng(derive_seed(seed, {0x1eb}));
  for (std::size_t i = 0; i < samples; ++i) ns.push_back(1 + uniform_below(rng, std::uint64_t{1} << kLebesgueSampleBits));
  std::vector<LebesgueRow> rows(ns.size());
  parallel_for(ns.size(), threads, [&](std::size_t i) { rows[i] = lebesgue_row(ns[i], i >= n_max); });
  return rows;
}

inline ExperimentReport lebesgue_report(const std::vector<LebesgueRow>& rows, std::uint64_t n_max, std::size_t samples,
                                        std::uint64_t seed) {
  ExperimentReport rep;
  rep.name = "lebesgue-sweep";
  rep.seed = seed;
  rep.parameter("n_max", n_max);
  rep.parameter("samples", samples);
  rep.columns = {"n", "sampled", "V", "norm", "norm_decimal", "lower_ok", "upper_ok"};
  std::size_t violations = 0;
  for (const auto& r : rows) {
    std::vector<std::string> row{std::to_string(r.n), r.sampled ? "1" : "0", std::to_string(r.variation)};
    ExperimentReport::exact_cells(row, r.norm.to_rational());
    row.push_back(r.lower_ok ? "1" : "0");
    row.push_back(r.upper_ok ? "1" : "0");
    violations += !r.lower_ok + !r.upper_ok;
    rep.rows.push_back(std::move(row));
  }
  rep.comments.push_back("bound violations: " + std::to_string(violations));
  return rep;
}

// ---- partial-sum norms ----------------------------------------------------------

inline constexpr std::int64_t kSweepNumeratorBound = 16;

struct PartialSumNormSweep {
  std::uint64_t n_max = 0;
  std::size_t trials = 0;
  unsigned resolution = 0;
  std::uint64_t seed = 0;
  std::vector<Rational> max_ratio;  // index n - 1: max over trials of ||S_n F||_1 / (V(n) ||F||_1)

  /// max over n <= limit.
  Rational constant_up_to(std::uint64_t limit) const {
    Rational best = 0;
    for (std::uint64_t n = 1; n <= std::min<std::uint64_t>(limit, max_ratio.size()); ++n)
      best = std::max(best, max_ratio[n - 1]);
    return best;
  }
};

/// Random integer step function with |values| <= 16 at the given resolution.
inline StepFunction random_test_function(std::uint64_t seed, unsigned resolution) {
  Rng rng(seed);
  std::vector<BigInt> v(std::size_t{1} << resolution);
  for (auto& x : v) x = uniform_between(rng, -kSweepNumeratorBound, kSweepNumeratorBound);
  if (std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x.is_zero(); })) v[0] = 1;
  return StepFunction(resolution, std::move(v), 0);
}

/// Over `trials` random F at resolution |n_max| + 1, records
/// max ||S_n F||_1 / (V(n) ||F||_1) for every n <= n_max.
inline PartialSumNormSweep partial_sum_norm_sweep(std::uint64_t n_max, std::size_t trials, std::uint64_t seed,
                                                  unsigned threads = 0) {
  detail::require_index(n_max, "partial_sum_norm_sweep");
  const unsigned res = high_bit(n_max) + 1;
  detail::require_resolution(res);
  if (res > 20) throw std::out_of_range("partial_sum_norm_sweep: n_max must be below 2^20");
  PartialSumNormSweep out;
  out.n_max = n_max;
  out.trials = trials;
  out.resolution = res;
  out.seed = seed;
  const std::size_t cells = std::size_t{1} << res;
  const auto rev = bit_reverse_table(res);

  // per trial: l1 numerators sum_i |S_n num_i| (S_n F = num / 2^res) and sum_i |F_i|
  std::vector<std::vector<std::int64_t>> l1(trials);
  std::vector<std::int64_t> f_l1(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    const StepFunction f = random_test_function(derive_seed(seed, {t}), res);
    const Spectrum spec = wht(f);  // exponent <= res after normalization
    const std::vector<BigInt> c = spec.numerators_at(res);
    std::int64_t total = 0;
    for (const BigInt& v : f.numerators()) total += boost::multiprecision::abs(v).convert_to<std::int64_t>();
    f_l1[t] = total;
    std::vector<std::int64_t> sums(cells, 0);
    auto& row = l1[t];
    row.resize(n_max);
    for (std::uint64_t k = 0; k < n_max; ++k) {
      const std::int64_t ck = c[k].convert_to<std::int64_t>();
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < cells; ++i) {
        sums[i] += walsh_sign_negative(k, rev[i]) ? -ck : ck;
        acc += sums[i] < 0 ? -sums[i] : sums[i];
      }
      row[k] = acc;  // ||S_{k+1} F||_1 = acc / 2^(2 res)
    }
  });
  out.max_ratio.assign(n_max, Rational(0));
  const BigInt scale = pow2(res);  // ||S_n F||_1 / ||F||_1 = acc / (2^res * total)
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    Rational best = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const Rational r(BigInt(l1[t][n - 1]), scale * f_l1[t] * variation(n));
      if (r > best) best = r;
    }
    out.max_ratio[n - 1] = best;
  }
  return out;
}

inline ExperimentReport partial_sum_norm_report(const PartialSumNormSweep& s) {
  ExperimentReport rep;
  rep.name = "snorm-sweep";
  rep.seed = s.seed;
  rep.parameter("n_max", s.n_max);
  rep.parameter("trials", s.trials);
  rep.parameter("N", s.resolution);
  rep.columns = {"n", "V", "max_ratio", "max_ratio_decimal"};
  for (std::uint64_t n = 1; n <= s.n_max && s.trials > 0; ++n) {
    std::vector<std::string> row{std::to_string(n), std::to_string(variation(n))};
    ExperimentReport::exact_cells(row, s.max_ratio[n - 1]);
    rep.rows.push_back(std::move(row));
  }
  const Rational c = s.constant_up_to(s.n_max);
  rep.comments.push_back("empirical constant max ||S_n F||_1 / (V(n) ||F||_1) = " + exact_string(c) + " = " +
                         decimal_string(to_double(c)));
  return rep;
}

// ---- boundary-set explorer ----------------------------------------------------------

/// Window families by name: "powers", "all-ones" or "random:k" (k random
/// indices per window), over windows s < N.
inline WindowFamily make_window_family(const std::string& spec, unsigned resolution, std::uint64_t seed) {
  if (resolution == 0) throw std::invalid_argument("window family: resolution must be at least 1");
  const unsigned s_max = resolution - 1;
  if (spec == "powers") return WindowFamily::powers(s_max);
  if (spec == "all-ones") return WindowFamily::all_ones(s_max);
  if (spec.rfind("random:", 0) == 0) {
    std::size_t k = 0;
    try {
      std::size_t used = 0;
      k = std::stoul(spec.substr(7), &used);
      if (used != spec.size() - 7) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::invalid_argument("window family '" + spec + "': expected random:<count>");
    }
    if (k == 0) throw std::invalid_argument("window family '" + spec + "': count must be positive");
    WindowFamily f;
    for (unsigned s = 0; s <= s_max; ++s) {
      Rng rng(derive_seed(seed, {0xfa3, s}));
      std::vector<std::uint64_t> list;
      for (std::size_t i = 0; i < k; ++i) list.push_back((std::uint64_t{1} << s) + uniform_below(rng, std::uint64_t{1} << s));
      f.add(s, std::move(list));
    }
    return f;
  }
  throw std::invalid_argument("unknown window family '" + spec + "' (expected powers, all-ones or random:<k>)");
}

struct ConjectureRow {
  std::string family;
  std::string function;
  Rational ratio;  // ||sup_n |S_n f| / |A_|n|| ||_1 / ||f||_{H_1}
};

struct ConjectureRun {
  unsigned resolution = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::map<unsigned, std::size_t>>> cardinalities;
  std::vector<ConjectureRow> rows;
};

inline ConjectureRun conjecture_explorer(const std::vector<std::string>& families, unsigned resolution, std::uint64_t seed,
                                         std::size_t count, unsigned threads = 0) {
  if (resolution < 1 || resolution > 16)
    throw std::out_of_range("conjecture_explorer: N must lie in [1, 16], got " + std::to_string(resolution));
  ConjectureRun run;
  run.resolution = resolution;
  run.seed = seed;
  std::vector<std::pair<std::string, StepFunction>> functions;
  for (std::size_t i = 0; i < count; ++i)
    functions.emplace_back("random#" + std::to_string(i), random_test_function(derive_seed(seed, {0xc0, i}), resolution));
  for (unsigned nk = kMinCounterexampleIndex; nk + 1 <= resolution; ++nk)
    functions.emplace_back("f_nk=" + std::to_string(nk), counterexample(nk, resolution));

  for (const std::string& name : families) {
    const WindowFamily fam = make_window_family(name, resolution, seed);
    run.cardinalities.emplace_back(name, fam.boundary_cardinalities());
    const WeightFamily w = WeightFamily::boundary_card(fam);
    const IndexSet idx = IndexSet::windows(fam);
    std::vector<ConjectureRow> rows(functions.size());
    parallel_for(functions.size(), threads, [&](std::size_t i) {
      const StepFunction& f = functions[i].second;
      const Rational num = l1_norm(weighted_maximal(f, w, idx));
      const DyadicRational den = h1_norm(Martingale(f));
      rows[i] = {name, functions[i].first, den.is_zero() ? Rational(0) : num / den.to_rational()};
    });
    run.rows.insert(run.rows.end(), rows.begin(), rows.end());
  }
  return run;
}

inline ExperimentReport conjecture_report(const ConjectureRun& run, std::size_t count) {
  ExperimentReport rep;
  rep.name = "conjecture";
  rep.seed = run.seed;
  rep.parameter("N", run.resolution);
  rep.parameter("count", count);
  rep.comments.push_back("exploratory: data only, no verdict is drawn");
  rep.columns = {"family", "kind", "label", "s", "A_s", "ratio", "ratio_decimal"};
  for (const auto& [name, cards] : run.cardinalities)
    for (const auto& [s, a] : cards) rep.rows.push_back({name, "window", "", std::to_string(s), std::to_string(a), "", ""});
  for (const auto& r : run.rows) {
    std::vector<std::string> row{r.family, "function", r.function, "", ""};
    ExperimentReport::exact_cells(row, r.ratio);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace walsh
