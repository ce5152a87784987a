#pragma once

// Experiment reports and their CSV form.
//
//   # experiment=<name>
//   # seed=<seed> <key>=<value> ...
//   # <free comment lines>
//   col1,col2,...
//   rows...
//
// Exact values take two columns: "p/2^k" (or "p/q" when the denominator is
// not a power of two) and a 15-significant-digit decimal.

#include "walsh/numeric.hpp"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace walsh {

/// "p/2^k" for dyadic rationals, "p/q" otherwise, plain integers as "p".
inline std::string exact_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  if ((den & (den - 1)) == 0) return num.str() + "/2^" + std::to_string(detail::bit_length(den) - 1);
  return num.str() + "/" + den.str();
}

inline std::string exact_string(const DyadicRational& d) { return exact_string(d.to_rational()); }

struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::uint64_t seed = 0;
  double runtime_seconds = 0;  // informational; not part of the CSV

  void parameter(std::string key, std::string value) { parameters.emplace_back(std::move(key), std::move(value)); }
  template <class T>
  void parameter(std::string key, const T& value) {
    std::ostringstream os;
    os << value;
    parameters.emplace_back(std::move(key), os.str());
  }

  /// Appends the two columns of an exact value.
  static void exact_cells(std::vector<std::string>& row, const Rational& r) {
    row.push_back(exact_string(r));
    row.push_back(decimal_string(to_double(r)));
  }
};

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline void write_csv(std::ostream& os, const ExperimentReport& r) {
  os << "# experiment=" << r.name << '\n';
  os << "# seed=" << r.seed;
  for (const auto& [k, v] : r.parameters) os << ' ' << k << '=' << v;
  os << '\n';
  for (const auto& c : r.comments) os << "# " << c << '\n';
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << detail::csv_field(r.columns[i]);
  os << '\n';
  for (const auto& row : r.rows) {
    if (row.size() != r.columns.size())
      throw std::logic_error("report " + r.name + ": row width " + std::to_string(row.size()) + " does not match " +
                             std::to_string(r.columns.size()) + " columns");
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::csv_field(row[i]);
    os << '\n';
  }
}

inline std::string csv_string(const ExperimentReport& r) {
  std::ostringstream os;
  write_csv(os, r);
  return os.str();
}

/// UTC timestamp like 20240131T235959Z.
inline std::string timestamp_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

inline constexpr const char* kOutDirEnv = "WALSH_OUT_DIR";

/// Output directory: the explicit one, else $WALSH_OUT_DIR, else the working directory.
inline std::filesystem::path resolve_out_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return std::filesystem::current_path();
}

/// Writes the CSV to `path`, or to <dir>/<name>-<timestamp>.csv when path is
/// empty. Returns the file written.
inline std::filesystem::path save_report(const ExperimentReport& r, const std::string& path, const std::string& out_dir) {
  std::filesystem::path target = path;
  if (target.empty()) target = resolve_out_dir(out_dir) / (r.name + "-" + timestamp_now() + ".csv");
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::ofstream os(target, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + target.string() + " for writing");
  write_csv(os, r);
  if (!os) throw std::runtime_error("failed writing " + target.string());
  return target;
}

}  // namespace walsh
