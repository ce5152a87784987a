#pragma once

// Command-line front end. dispatch() parses, validates the whole
// configuration before computing anything, runs one subcommand and returns
// the exit code: 0 success, 2 invalid input, 1 internal error.

#include "walsh/dyadic_index.hpp"
#include "walsh/experiments.hpp"
#include "walsh/martingale.hpp"
#include "walsh/maximal.hpp"
#include "walsh/numeric.hpp"
#include "walsh/report.hpp"
#include "walsh/step_function.hpp"
#include "walsh/walsh_transform.hpp"
#include "walsh/weights.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace walsh::cli {

/// Invalid user input, tagged with the flag at fault.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string flag, const std::string& message)
      : std::invalid_argument(flag + ": " + message), flag_(std::move(flag)) {}
  const std::string& flag() const { return flag_; }

 private:
  std::string flag_;
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"index",         "blocks",         "boundary",       "dirichlet",
                                              "partial-sum",   "hpnorm",         "atom-check",     "weaktype-sweep",
                                              "lebesgue-sweep", "snorm-sweep",   "blowup",         "conjecture"};
  return names;
}

/// Everything given on the command line. Unset optionals fall back to
/// per-subcommand defaults when the command runs.
struct RunConfig {
  std::string subcommand;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> n_max;
  std::optional<unsigned> m;
  std::optional<unsigned> m_min;
  std::optional<unsigned> m_max;
  std::optional<unsigned> resolution;  // --N
  std::optional<unsigned> s;
  std::optional<unsigned> nk;
  std::optional<std::uint64_t> anchor;
  std::optional<std::string> p;
  std::optional<double> eps;
  std::optional<std::size_t> count;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 0;
  std::optional<unsigned> threads;
  std::optional<std::string> mode;
  std::vector<std::uint64_t> indices;
  std::vector<std::string> families;
  std::optional<std::string> input;
  std::optional<std::string> output;
  std::optional<std::string> out_dir;
  bool norm = false;
  bool weights = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  /// An argument list that parses back to an equal configuration.
  std::vector<std::string> to_argv() const {
    std::vector<std::string> a{subcommand};
    auto opt = [&](const char* flag, const auto& v) {
      if (v) {
        std::ostringstream os;
        os.precision(17);
        os << *v;
        a.push_back(flag);
        a.push_back(os.str());
      }
    };
    if ((subcommand == "index" || subcommand == "blocks") && n) a.push_back(std::to_string(*n));
    else opt("--n", n);
    opt("--n-max", n_max);
    opt("--M", m);
    opt("--M-min", m_min);
    opt("--M-max", m_max);
    opt("--N", resolution);
    opt("--s", s);
    opt("--nk", nk);
    opt("--anchor", anchor);
    opt("--p", p);
    opt("--eps", eps);
    opt("--count", count);
    opt("--samples", samples);
    opt("--trials", trials);
    a.push_back("--seed");
    a.push_back(std::to_string(seed));
    opt("--threads", threads);
    opt("--mode", mode);
    auto list = [&](const char* flag, const auto& v) {
      if (v.empty()) return;
      std::ostringstream os;
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
      a.push_back(flag);
      a.push_back(os.str());
    };
    list("--indices", indices);
    list("--families", families);
    opt("--input", input);
    opt("--output", output);
    opt("--out-dir", out_dir);
    if (norm) a.push_back("--norm");
    if (weights) a.push_back("--weights");
    return a;
  }
};

namespace detail {

inline void require(bool ok, const char* flag, const std::string& message) {
  if (!ok) throw ConfigError(flag, message);
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag) {
  if (!v) throw ConfigError(flag, "is required");
  return *v;
}

inline Exponent exponent_of(const RunConfig& c) {
  try {
    return Exponent::parse(c.p.value_or("1"));
  } catch (const std::exception& e) {
    throw ConfigError("--p", e.what());
  }
}

inline void require_index_flag(std::uint64_t n, const char* flag) {
  require(n >= 1, flag, "must be at least 1");
  require(n < kMaxIndex, flag, "must be below 2^63");
}

inline void require_resolution_flag(unsigned res, const char* flag, unsigned cap = kMaxResolution) {
  require(res <= cap, flag, "resolution " + std::to_string(res) + " exceeds the cap of " + std::to_string(cap));
}

inline StepFunction read_input(const RunConfig& c) {
  const std::string& path = need(c.input, "--input");
  std::ifstream is(path);
  if (!is) throw ConfigError("--input", "cannot open '" + path + "'");
  try {
    return read_step_function(is);
  } catch (const std::exception& e) {
    throw ConfigError("--input", e.what());
  }
}

inline unsigned thread_count(const RunConfig& c) { return c.threads.value_or(0); }

}  // namespace detail

/// Rejects invalid combinations before any computation. Throws ConfigError.
inline void validate(const RunConfig& c) {
  using detail::need;
  using detail::require;
  const std::string& cmd = c.subcommand;
  require(std::find(subcommands().begin(), subcommands().end(), cmd) != subcommands().end(), "subcommand",
          "unknown subcommand '" + cmd + "'");
  if (c.p) {
    const Exponent p = detail::exponent_of(c);
    if (cmd == "index") require(p.num() <= p.den(), "--p", "weights take 0 < p <= 1");
  }
  if (c.eps) require(*c.eps > 0, "--eps", "must be positive");
  if (c.threads) require(*c.threads >= 1, "--threads", "must be at least 1");
  if (cmd == "index" || cmd == "blocks") {
    detail::require_index_flag(need(c.n, "n"), "n");
  } else if (cmd == "boundary") {
    const unsigned s = need(c.s, "--s");
    require(s < 63, "--s", "must be below 63");
    require(!c.indices.empty(), "--indices", "needs at least one index");
    for (std::uint64_t n : c.indices)
      require(n >= (std::uint64_t{1} << s) && n < (std::uint64_t{2} << s), "--indices",
              std::to_string(n) + " is not in [2^s, 2^(s+1))");
  } else if (cmd == "dirichlet") {
    const std::uint64_t n = need(c.n, "--n");
    detail::require_index_flag(n, "--n");
    const unsigned res = c.resolution.value_or(high_bit(n) + 1);
    require(res > high_bit(n), "--N", "must exceed |n| = " + std::to_string(high_bit(n)));
    detail::require_resolution_flag(res, "--N", c.norm ? 24u : 16u);
  } else if (cmd == "partial-sum") {
    detail::require_index_flag(need(c.n, "--n"), "--n");
    need(c.input, "--input");
  } else if (cmd == "hpnorm") {
    need(c.input, "--input");
  } else if (cmd == "atom-check") {
    const unsigned m = need(c.m, "--M");
    if (!c.input) {
      const unsigned res = need(c.resolution, "--N");
      detail::require_resolution_flag(res, "--N", 24);
      require(m < res, "--M", "must be below N = " + std::to_string(res));
    }
    if (c.anchor) require(m < 64 && (*c.anchor >> m) == 0, "--anchor", "must fit in M bits");
  } else if (cmd == "weaktype-sweep") {
    const unsigned res = c.resolution.value_or(12);
    detail::require_resolution_flag(res, "--N", 20);
    const unsigned lo = c.m_min.value_or(4);
    const unsigned hi = c.m_max.value_or(10);
    require(lo >= 1, "--M-min", "must be at least 1");
    require(lo <= hi, "--M-max", "must be at least --M-min");
    require(hi < res, "--M-max", "must be below N = " + std::to_string(res));
    if (c.p) require(detail::exponent_of(c).is_one(), "--p", "the sweep runs 1-atoms only");
  } else if (cmd == "lebesgue-sweep") {
    const std::uint64_t n_max = c.n_max.value_or(4096);
    require(n_max >= 1 && n_max < (std::uint64_t{1} << 24), "--n-max", "must lie in [1, 2^24)");
  } else if (cmd == "snorm-sweep") {
    const std::uint64_t n_max = c.n_max.value_or(2048);
    require(n_max >= 1 && n_max < (std::uint64_t{1} << 16), "--n-max", "must lie in [1, 2^16)");
  } else if (cmd == "blowup") {
    const unsigned nk = need(c.nk, "--nk");
    require(nk >= kMinCounterexampleIndex, "--nk", "must be at least 3");
    require(nk < kMaxResolution, "--nk", "must be below " + std::to_string(kMaxResolution));
    const unsigned res = c.resolution.value_or(nk + 1);
    require(res >= nk + 1, "--N", "must be at least nk + 1");
    BlowupMode mode = BlowupMode::automatic;
    try {
      mode = parse_blowup_mode(c.mode.value_or("auto"));
    } catch (const std::exception& e) {
      throw ConfigError("--mode", e.what());
    }
    if (mode == BlowupMode::full)
      detail::require_resolution_flag(res, "--N", kMaxFullBlowupResolution);
    else
      detail::require_resolution_flag(res, "--N", 22);
  } else if (cmd == "conjecture") {
    const unsigned res = c.resolution.value_or(8);
    require(res >= 1 && res <= 12, "--N", "must lie in [1, 12]");
    const std::vector<std::string> fams = c.families.empty() ? std::vector<std::string>{"powers", "all-ones"} : c.families;
    for (const auto& f : fams) {
      try {
        make_window_family(f, 1, 0);
      } catch (const std::exception& e) {
        throw ConfigError("--families", e.what());
      }
    }
  }
}

namespace detail {

inline void print_sweep_footer(const ExperimentReport& rep, const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto path = save_report(rep, c.output.value_or(""), c.out_dir.value_or(""));
  out << "wrote " << path.string() << '\n';
  err << "runtime " << decimal_string(rep.runtime_seconds) << " s\n";
}

inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::string& cmd = c.subcommand;
  if (cmd == "index") {
    const IndexProfile p = index_profile(*c.n);
    out << "low=" << p.low << " high=" << p.high << " rho=" << p.gap << " V=" << p.variation << '\n';
    if (c.weights) {
      const Exponent e = exponent_of(c);
      auto show = [&](const WeightFamily& w) {
        if (!w.admissible(*c.n)) return std::string("undefined");
        const WeightValue v = w.value(*c.n);
        return v.exact ? exact_string(*v.exact) : decimal_string(v.approx);
      };
      out << "variation=" << show(WeightFamily::variation()) << " polynomial=" << show(WeightFamily::polynomial(e))
          << " dyadic-gap=" << show(WeightFamily::dyadic_gap(e))
          << " eps-log=" << show(WeightFamily::eps_log(e, c.eps.value_or(1.0))) << '\n';
    }
    return 0;
  }
  if (cmd == "blocks") {
    const BlockDecomposition d = blocks(*c.n);
    out << "blocks=" << d.blocks.size();
    for (const Block& b : d.blocks) out << " [" << b.first << "," << b.last << "]";
    out << '\n';
    return 0;
  }
  if (cmd == "boundary") {
    const BoundarySet b = boundary_set(c.indices, *c.s);
    const WindowProfile w = window_profile(c.indices, *c.s);
    out << "A_s={";
    for (std::size_t i = 0; i < b.members.size(); ++i) out << (i ? "," : "") << b.members[i];
    out << "} |A_s|=" << b.cardinality() << " s-=" << w.s_minus << " s+=" << w.s_plus << " rho_s=" << w.rho_s << '\n';
    return 0;
  }
  if (cmd == "dirichlet") {
    const std::uint64_t n = *c.n;
    const unsigned res = c.resolution.value_or(high_bit(n) + 1);
    if (c.norm) {
      out << kernel_l1_norm(dirichlet_closed_values<std::int64_t>(n, res), res).fraction() << '\n';
      return 0;
    }
    write_step_function(out, dirichlet_closed(n, res));
    return 0;
  }
  if (cmd == "partial-sum") {
    const StepFunction f = read_input(c);
    if (*c.n > f.size()) {
      // S_n f = f once n >= 2^N
      write_step_function(out, f);
      return 0;
    }
    const StepFunction s = partial_sum(f, *c.n);
    if (c.output) {
      std::ofstream os(*c.output);
      if (!os) throw ConfigError("--output", "cannot open '" + *c.output + "'");
      write_step_function(os, s);
      out << "wrote " << *c.output << '\n';
    } else {
      write_step_function(out, s);
    }
    return 0;
  }
  if (cmd == "hpnorm") {
    const StepFunction f = read_input(c);
    const Exponent p = exponent_of(c);
    const Martingale F(f);
    if (p.is_one()) {
      const DyadicRational h = h1_norm(F);
      out << h.fraction() << ' ' << decimal_string(h.to_double()) << '\n';
    } else {
      out << decimal_string(hp_norm(F, p)) << '\n';
    }
    return 0;
  }
  if (cmd == "atom-check") {
    const Exponent p = exponent_of(c);
    Atom a;
    if (c.input) {
      a = Atom{p, *c.m, c.anchor.value_or(0), read_input(c)};
    } else {
      a = random_atom(c.seed, p, *c.m, *c.resolution, c.anchor.value_or(0));
    }
    const AtomCheck check = validate_atom(a);
    out << (check.valid() ? "valid" : "invalid: " + check.diagnostics);
    if (check.valid() && p.is_one()) out << " weak_statistic=" << exact_string(weak_type_statistic(a));
    out << '\n';
    return 0;
  }
  if (cmd == "weaktype-sweep") {
    const std::size_t count = c.count.value_or(1000);
    ::walsh::detail::Stopwatch sw;
    const WeakTypeSweep s = weak_type_sweep(count, c.m_min.value_or(4), c.m_max.value_or(10), c.resolution.value_or(12),
                                            c.seed, thread_count(c));
    ExperimentReport rep = weak_type_report(s, count);
    rep.runtime_seconds = sw.seconds();
    out << "weaktype-sweep: global max " << exact_string(s.global_max) << " = " << decimal_string(to_double(s.global_max))
        << '\n';
    print_sweep_footer(rep, c, out, err);
    return 0;
  }
  if (cmd == "lebesgue-sweep") {
    const std::uint64_t n_max = c.n_max.value_or(4096);
    const std::size_t samples = c.samples.value_or(0);
    ::walsh::detail::Stopwatch sw;
    const auto rows = lebesgue_sweep(n_max, samples, c.seed, thread_count(c));
    ExperimentReport rep = lebesgue_report(rows, n_max, samples, c.seed);
    rep.runtime_seconds = sw.seconds();
    std::size_t violations = 0;
    for (const auto& r : rows) violations += !r.lower_ok + !r.upper_ok;
    out << "lebesgue-sweep: " << rows.size() << " indices, " << violations << " bound violations\n";
    print_sweep_footer(rep, c, out, err);
    return violations == 0 ? 0 : 1;
  }
  if (cmd == "snorm-sweep") {
    ::walsh::detail::Stopwatch sw;
    const PartialSumNormSweep s = partial_sum_norm_sweep(c.n_max.value_or(2048), c.trials.value_or(200), c.seed, thread_count(c));
    ExperimentReport rep = partial_sum_norm_report(s);
    rep.runtime_seconds = sw.seconds();
    const Rational k = s.constant_up_to(s.n_max);
    out << "snorm-sweep: empirical constant " << exact_string(k) << " = " << decimal_string(to_double(k)) << '\n';
    print_sweep_footer(rep, c, out, err);
    return 0;
  }
  if (cmd == "blowup") {
    const BlowupResult r = blowup_ratio(*c.nk, parse_blowup_mode(c.mode.value_or("auto")), c.resolution.value_or(0));
    out << fraction_string(r.ratio) << " = " << decimal_string(to_double(r.ratio)) << " mode=" << to_string(r.mode)
        << " N=" << r.resolution << " h1=" << exact_string(r.h1) << '\n';
    return 0;
  }
  if (cmd == "conjecture") {
    const std::vector<std::string> fams = c.families.empty() ? std::vector<std::string>{"powers", "all-ones"} : c.families;
    const std::size_t count = c.count.value_or(8);
    ::walsh::detail::Stopwatch sw;
    const ConjectureRun run = conjecture_explorer(fams, c.resolution.value_or(8), c.seed, count, thread_count(c));
    ExperimentReport rep = conjecture_report(run, count);
    rep.runtime_seconds = sw.seconds();
    out << "conjecture (exploratory): " << run.rows.size() << " ratios over " << fams.size() << " families\n";
    print_sweep_footer(rep, c, out, err);
    return 0;
  }
  throw ConfigError("subcommand", "unknown subcommand '" + cmd + "'");
}

}  // namespace detail

/// Builds the CLI11 parser writing into `c`.
inline void configure(CLI::App& app, RunConfig& c) {
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  auto common = [&](CLI::App* s) {
    s->add_option("--seed", c.seed, "Seed for every random draw (default 0)");
    s->add_option("--threads", c.threads, "Worker thread cap (default: hardware threads)");
  };
  auto sweep_out = [&](CLI::App* s) {
    s->add_option("--output", c.output, "CSV path (default <dir>/<experiment>-<timestamp>.csv)");
    s->add_option("--out-dir", c.out_dir, std::string("CSV directory (default $") + kOutDirEnv + " or the working directory)");
  };
  auto bind = [&](CLI::App* s, const std::string& name) {
    s->callback([&c, name] { c.subcommand = name; });
    common(s);
  };

  auto* index = app.add_subcommand("index", "Binary profile of n: lowest and highest set bits, gap rho(n) = |n| - [n], "
                                            "and the variation V(n) = n_0 + sum |n_k - n_(k-1)|");
  index->add_option("n", c.n, "Index n >= 1")->required();
  index->add_option("--p", c.p, "Exponent 0 < p <= 1 for --weights");
  index->add_option("--eps", c.eps, "Epsilon of the eps-log weight (default 1)");
  index->add_flag("--weights", c.weights, "Also print the weight families at n");
  bind(index, "index");

  auto* blk = app.add_subcommand("blocks", "Maximal runs of one-digits of n; V(n) equals twice their number");
  blk->add_option("n", c.n, "Index n >= 1")->required();
  bind(blk, "blocks");

  auto* bnd = app.add_subcommand("boundary", "Boundary set A_s: endpoints of the one-blocks of indices in [2^s, 2^(s+1)), "
                                             "with |A_s| and the window gap rho_s = s+ - s-");
  bnd->add_option("--s", c.s, "Window exponent s")->required();
  bnd->add_option("--indices", c.indices, "Comma-separated indices in [2^s, 2^(s+1))")->delimiter(',')->required();
  bind(bnd, "boundary");

  auto* dir = app.add_subcommand("dirichlet", "Dirichlet kernel D_n = w_0 + ... + w_(n-1) on the depth-N cosets, "
                                              "or with --norm its Lebesgue constant ||D_n||_1 (exact)");
  dir->add_option("--n", c.n, "Kernel index n >= 1")->required();
  dir->add_option("--N", c.resolution, "Resolution (default |n| + 1)");
  dir->add_flag("--norm", c.norm, "Print ||D_n||_1 instead of the values");
  bind(dir, "dirichlet");

  auto* ps = app.add_subcommand("partial-sum", "Walsh-Fourier partial sum S_n f = sum_(k<n) f^(k) w_k of a step function file");
  ps->add_option("--n", c.n, "Number of terms n >= 1")->required();
  ps->add_option("--input", c.input, "Step function file (N=<res> then 2^N lines num/2^k)")->required();
  ps->add_option("--output", c.output, "Write the result here instead of stdout");
  bind(ps, "partial-sum");

  auto* hp = app.add_subcommand("hpnorm", "Martingale Hardy norm ||F||_(H_p) = ||sup_m |S_(2^m) f| ||_p of a step function "
                                          "file (exact for p = 1)");
  hp->add_option("--input", c.input, "Step function file")->required();
  hp->add_option("--p", c.p, "Exponent p > 0 (default 1)");
  bind(hp, "hpnorm");

  auto* ac = app.add_subcommand("atom-check", "Checks the p-atom conditions (support in I_M, zero mean, sup |a| <= 2^(M/p)) "
                                              "for a file or a seeded random atom; prints the weak-type statistic "
                                              "sup_t t mu(x off I_M : sup_n |S_n a| / V(n) >= t) for valid 1-atoms");
  ac->add_option("--M", c.m, "Support depth M")->required();
  ac->add_option("--N", c.resolution, "Resolution of the random atom");
  ac->add_option("--anchor", c.anchor, "M-bit prefix of the support coset (default 0)");
  ac->add_option("--input", c.input, "Check this step function instead of a random atom");
  ac->add_option("--p", c.p, "Exponent p (default 1)");
  bind(ac, "atom-check");

  auto* wt = app.add_subcommand("weaktype-sweep", "Random 1-atoms per depth M: maximum of the weak-type statistic of the "
                                                  "V(n)-weighted maximal operator off the support; CSV per M and overall");
  wt->add_option("--count", c.count, "Atoms per depth (default 1000)");
  wt->add_option("--M-min", c.m_min, "Smallest depth (default 4)");
  wt->add_option("--M-max", c.m_max, "Largest depth (default 10)");
  wt->add_option("--N", c.resolution, "Resolution (default 12)");
  wt->add_option("--p", c.p, "Atom exponent; only 1 is supported");
  bind(wt, "weaktype-sweep");
  sweep_out(wt);

  auto* lb = app.add_subcommand("lebesgue-sweep", "Lebesgue constants ||D_n||_1 against V(n)/8 <= ||D_n||_1 <= V(n) for "
                                                  "every n <= n-max plus seeded samples in [1, 2^20]");
  lb->add_option("--n-max", c.n_max, "Largest exhaustive n (default 4096)");
  lb->add_option("--samples", c.samples, "Random extra indices (default 0)");
  bind(lb, "lebesgue-sweep");
  sweep_out(lb);

  auto* sn = app.add_subcommand("snorm-sweep", "Max over random F of ||S_n F||_1 / (V(n) ||F||_1) for every n <= n-max");
  sn->add_option("--n-max", c.n_max, "Largest n (default 2048)");
  sn->add_option("--trials", c.trials, "Random functions (default 200)");
  bind(sn, "snorm-sweep");
  sweep_out(sn);

  auto* bu = app.add_subcommand("blowup", "For f = D_(2^(nk+1)) - D_(2^nk): ||sup_n |S_n f| / V(n)||_1 / ||f||_(H_1); "
                                          "witness mode uses only n = 2^nk + 2^s and bounds it from below");
  bu->add_option("--nk", c.nk, "Counterexample index nk >= 3")->required();
  bu->add_option("--mode", c.mode, "full, witness or auto (default auto: full up to N = 13)");
  bu->add_option("--N", c.resolution, "Resolution (default nk + 1)");
  bind(bu, "blowup");

  auto* cj = app.add_subcommand("conjecture", "Exploratory: ||sup_n |S_n f| / |A_|n|| ||_1 / ||f||_(H_1) over window families, "
                                              "with |A_s| per window; draws no conclusion");
  cj->add_option("--families", c.families, "powers, all-ones, random:<k> (comma-separated)")->delimiter(',');
  cj->add_option("--N", c.resolution, "Resolution (default 8)");
  cj->add_option("--count", c.count, "Random test functions (default 8)");
  bind(cj, "conjecture");
  sweep_out(cj);
}

/// Parses argv (without the program name) into a configuration.
inline RunConfig parse(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"Walsh-Fourier and dyadic martingale experiments", "walsh_cli"};
  configure(app, c);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);
  return c;
}

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Walsh-Fourier and dyadic martingale experiments", "walsh_cli"};
  configure(app, c);
  if (!args.empty() && args.front().rfind("-", 0) != 0 &&
      std::find(subcommands().begin(), subcommands().end(), args.front()) == subcommands().end()) {
    err << "error: subcommand: unknown subcommand '" << args.front() << "'\n";
    return 2;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  try {
    validate(c);
    return detail::run(c, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace walsh::cli
