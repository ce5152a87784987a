#include "walsh/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace walsh;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "walsh-cli-test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string write_file(const std::string& name, const std::string& body) {
  const auto p = scratch(name);
  std::ofstream(p) << body;
  return p.string();
}

}  // namespace

TEST(Cli, IndexAndBlocks) {
  EXPECT_EQ(run({"index", "6"}).out, "low=1 high=2 rho=1 V=2\n");
  EXPECT_EQ(run({"index", "5"}).out, "low=0 high=2 rho=2 V=4\n");
  EXPECT_EQ(run({"index", "1"}).out, "low=0 high=0 rho=0 V=2\n");
  EXPECT_EQ(run({"blocks", "13"}).out, "blocks=2 [0,0] [2,3]\n");
  const Outcome w = run({"index", "5", "--weights"});
  EXPECT_EQ(w.code, 0);
  EXPECT_NE(w.out.find("variation=4"), std::string::npos);
  EXPECT_NE(w.out.find("dyadic-gap=1"), std::string::npos);
}

TEST(Cli, BoundaryAndDirichlet) {
  EXPECT_EQ(run({"boundary", "--s", "3", "--indices", "13,9"}).out, "A_s={0,2,3} |A_s|=3 s-=0 s+=3 rho_s=3\n");
  EXPECT_EQ(run({"dirichlet", "--n", "3", "--norm"}).out, "3/2\n");
  EXPECT_EQ(run({"dirichlet", "--n", "3"}).out, "N=2\n3/2^0\n1/2^0\n1/2^0\n-1/2^0\n");
  EXPECT_EQ(run({"dirichlet", "--n", "8", "--norm"}).out, "1\n");
}

TEST(Cli, FileCommands) {
  const std::string f = write_file("f.txt", "N=2\n3/2^0\n1/2^0\n1/2^0\n-1/2^0\n");
  EXPECT_EQ(run({"partial-sum", "--n", "1", "--input", f}).out, "N=2\n1/2^0\n1/2^0\n1/2^0\n1/2^0\n");
  EXPECT_EQ(run({"partial-sum", "--n", "9", "--input", f}).out, "N=2\n3/2^0\n1/2^0\n1/2^0\n-1/2^0\n");
  const Outcome h = run({"hpnorm", "--input", f});
  EXPECT_EQ(h.code, 0);
  EXPECT_EQ(h.out.rfind("7/4 1.75", 0), 0u);

  const std::string atom = write_file("atom.txt", "N=2\n2\n-2\n0\n0\n");
  const Outcome a = run({"atom-check", "--M", "1", "--input", atom});
  EXPECT_EQ(a.out.rfind("valid weak_statistic=", 0), 0u);
  const std::string bad = write_file("bad.txt", "N=2\n3\n-3\n0\n0\n");
  EXPECT_EQ(run({"atom-check", "--M", "1", "--input", bad}).out.rfind("invalid", 0), 0u);
  EXPECT_EQ(run({"atom-check", "--M", "3", "--N", "6", "--seed", "4"}).out.rfind("valid", 0), 0u);
}

TEST(Cli, PartialSumOutputFileMatchesStdout) {
  const std::string f = write_file("g.txt", "N=3\n1/2^1\n5\n-3\n0\n7\n1\n1\n-1/2^2\n");
  const auto path = scratch("g-out.txt");
  const Outcome direct = run({"partial-sum", "--n", "5", "--input", f});
  const Outcome filed = run({"partial-sum", "--n", "5", "--input", f, "--output", path.string()});
  EXPECT_EQ(filed.code, 0);
  EXPECT_EQ(slurp(path), direct.out);
}

TEST(Cli, BlowupAndSweeps) {
  EXPECT_EQ(run({"blowup", "--nk", "8", "--mode", "witness"}).out, "11/8 = 1.375 mode=witness N=9 h1=1\n");
  const auto dir = scratch("sweeps").string();
  const Outcome a = run({"snorm-sweep", "--n-max", "32", "--trials", "4", "--out-dir", dir, "--output", dir + "/a.csv"});
  const Outcome b = run({"snorm-sweep", "--n-max", "32", "--trials", "4", "--threads", "2", "--output", dir + "/b.csv"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(slurp(dir + "/a.csv"), slurp(dir + "/b.csv"));
  EXPECT_NE(a.err.find("runtime"), std::string::npos);
  EXPECT_EQ(run({"lebesgue-sweep", "--n-max", "64", "--samples", "3", "--output", dir + "/l.csv"}).code, 0);
  EXPECT_EQ(run({"weaktype-sweep", "--count", "3", "--M-min", "2", "--M-max", "3", "--N", "6", "--output", dir + "/w.csv"}).code, 0);
  const Outcome c = run({"conjecture", "--N", "5", "--count", "2", "--families", "powers,random:2", "--output", dir + "/c.csv"});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("exploratory"), std::string::npos);
}

TEST(Cli, InvalidInputExitsWithTwo) {
  const std::vector<std::vector<std::string>> cases{
      {"index", "0"},
      {"frobnicate"},
      {"boundary", "--s", "3", "--indices", "7"},
      {"dirichlet", "--n", "5", "--N", "2"},
      {"dirichlet", "--n", "5", "--N", "17"},
      {"blowup", "--nk", "2"},
      {"blowup", "--nk", "5", "--mode", "half"},
      {"blowup", "--nk", "5", "--mode", "full", "--N", "16"},
      {"weaktype-sweep", "--M-min", "5", "--M-max", "4"},
      {"weaktype-sweep", "--M-max", "12", "--N", "12"},
      {"atom-check", "--M", "4", "--N", "4"},
      {"atom-check", "--M", "2", "--N", "5", "--anchor", "4"},
      {"hpnorm", "--input", "/nonexistent/f.txt"},
      {"conjecture", "--families", "stairs"},
      {"index", "5", "--weights", "--p", "3/2"},
      {"snorm-sweep", "--threads", "0"},
      {"index"},
  };
  for (const auto& args : cases) {
    const Outcome o = run(args);
    EXPECT_EQ(o.code, 2) << args[0] << " " << o.err;
    EXPECT_FALSE(o.err.empty());
    EXPECT_TRUE(o.out.empty()) << o.out;
  }
  EXPECT_NE(run({"frobnicate"}).err.find("unknown subcommand"), std::string::npos);
  EXPECT_NE(run({"blowup", "--nk", "2"}).err.find("--nk"), std::string::npos);
  const std::string malformed = write_file("m.txt", "N=2\n1\n");
  EXPECT_NE(run({"hpnorm", "--input", malformed}).err.find("--input"), std::string::npos);
}

TEST(Cli, ValidateIsPureAndComplete) {
  cli::RunConfig c;
  c.subcommand = "dirichlet";
  EXPECT_THROW(cli::validate(c), cli::ConfigError);
  c.n = 5;
  EXPECT_NO_THROW(cli::validate(c));
  c.resolution = 17;
  EXPECT_THROW(cli::validate(c), cli::ConfigError);
  c.norm = true;
  EXPECT_NO_THROW(cli::validate(c));
  try {
    c.resolution = 2;
    cli::validate(c);
    FAIL();
  } catch (const cli::ConfigError& e) {
    EXPECT_EQ(e.flag(), "--N");
  }
}

TEST(Cli, ConfigRoundTrip) {
  const std::vector<std::vector<std::string>> cases{
      {"index", "77", "--weights", "--p", "1/2", "--eps", "0.25"},
      {"blocks", "12"},
      {"boundary", "--s", "2", "--indices", "4,5,7"},
      {"dirichlet", "--n", "9", "--N", "6", "--norm"},
      {"weaktype-sweep", "--count", "5", "--M-min", "2", "--M-max", "3", "--N", "7", "--seed", "9", "--threads", "2"},
      {"conjecture", "--families", "powers,random:3", "--N", "6", "--out-dir", "/tmp/x"},
      {"blowup", "--nk", "7", "--mode", "full"},
  };
  for (const auto& args : cases) {
    const cli::RunConfig c = cli::parse(args);
    EXPECT_EQ(c.subcommand, args[0]);
    EXPECT_EQ(cli::parse(c.to_argv()), c) << args[0];
  }
}

TEST(Cli, HelpDescribesEveryCommand) {
  const Outcome h = run({"--help-all"});
  EXPECT_EQ(h.code, 0);
  for (const auto& name : cli::subcommands()) EXPECT_NE(h.out.find(name), std::string::npos) << name;
  EXPECT_NE(h.out.find("V(n)"), std::string::npos);
}
