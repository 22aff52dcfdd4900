#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "cli.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "gadkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = gadkit::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(GADKIT_DATA_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    unsetenv("GADKIT_SEED");
    dir_ = fs::temp_directory_path() / ("gadkit_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(Cli, HelpListsEveryFlag) {
  const std::vector<std::pair<std::string, std::vector<std::string>>> expected{
      {"decompose",
       {"--poly", "--nvars", "--svd-tol", "--cluster-tol", "--nil-tol", "--comm-tol", "--retry-cap",
        "--coord-trials", "--polish-steps", "--rank", "--clusters", "--split", "--normalize", "--seed", "--entropy",
        "--output"}},
      {"rank", {"--omega", "--ell"}},
      {"reconstruct", {"--output"}},
      {"kernel", {"--poly", "--nvars", "--rows", "--cols", "--split", "--svd-tol", "--matrix"}},
      {"bench",
       {"--config", "--n", "--d", "--ks", "--trials", "--eps-min-exp", "--eps-max-exp", "--eps-step",
        "--bases", "--auto", "--threads", "--csv", "--svg", "--seed", "--entropy"}},
  };
  const Result top = run({"--help"});
  EXPECT_EQ(top.code, 0);
  for (const auto& [sub, flags] : expected) {
    EXPECT_NE(top.out.find(sub), std::string::npos) << sub;
    const Result r = run({sub, "--help"});
    EXPECT_EQ(r.code, 0);
    for (const auto& f : flags) EXPECT_NE(r.out.find(f), std::string::npos) << sub << " " << f;
    EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
  }
}

TEST_F(Cli, DecomposeIsReproducible) {
  const Result a = run({"decompose", data("waring.poly"), "--seed", "12"});
  const Result b = run({"decompose", data("waring.poly"), "--seed", "12"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"rank\": 3"), std::string::npos);

  setenv("GADKIT_SEED", "12", 1);
  EXPECT_EQ(run({"decompose", data("waring.poly")}).out, a.out);
  EXPECT_NE(run({"decompose", data("waring.poly"), "--seed", "13"}).out, a.out);
  unsetenv("GADKIT_SEED");

  const fs::path o = dir_ / "r.json";
  EXPECT_EQ(run({"decompose", data("waring.poly"), "--seed", "12", "-o", o.string()}).code, 0);
  EXPECT_EQ(slurp(o), a.out);
}

TEST_F(Cli, DecomposeInline) {
  const Result r = run({"decompose", "-p", "x0^3 + x1^3", "--nvars", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"rank\": 2"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
  const Result deg = run({"decompose", data("obstruction.poly")});
  EXPECT_EQ(deg.code, 1);
  EXPECT_NE(deg.out.find("\"exit_code\": 1"), std::string::npos);
  EXPECT_NE(deg.err.find("nil-index"), std::string::npos);

  EXPECT_EQ(run({"decompose", "-p", "x0^2 +"}).code, 65);
  EXPECT_EQ(run({"decompose", "-p", "x0^2 + x1"}).code, 65);
  EXPECT_EQ(run({"decompose", (dir_ / "nope.poly").string()}).code, 74);
  EXPECT_EQ(run({"decompose", "--bogus"}).code, 64);
  EXPECT_EQ(run({"decompose", data("waring.poly"), "--rank", "40"}).code, 2);
  EXPECT_EQ(run({}).code, 64);
  EXPECT_EQ(run({"decompose", data("waring.poly"), "-o", (dir_ / "x" / "y.json").string()}).code, 74);
}

TEST_F(Cli, RankAndReconstruct) {
  Result r = run({"rank", data("ell_rank_example.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "6\n");
  r = run({"rank", "--omega", "x1*x2", "--ell", "1,0,0"});
  EXPECT_EQ(r.out, "4\n");
  EXPECT_EQ(run({"rank", "--omega", "x1*x2"}).code, 64);

  r = run({"reconstruct", data("ell_rank_example.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("x0*x1*x2"), std::string::npos);

  const fs::path bad = dir_ / "bad.json";
  std::ofstream(bad) << "{\"n\": 1, \"d\": 1, \"terms\": [{\"ell\": [1, 0], \"omega\": \"x0^2\"}]}";
  EXPECT_EQ(run({"reconstruct", bad.string()}).code, 65);
}

TEST_F(Cli, Kernel) {
  const fs::path m = dir_ / "h.csv";
  const Result r = run({"kernel", "-p", "x0^2*x1 + x1^3", "--rows", "1", "--cols", "1", "--matrix",
                        m.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  // columns 1, x1 and the dual is supported on span{1, x1}
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 0);
  const std::string h = slurp(m);
  EXPECT_EQ(std::count(h.begin(), h.end(), '\n'), 2);
  const Result s = run({"kernel", "-p", "x0^3", "--nvars", "2", "--rows", "1", "--cols", "1"});
  EXPECT_EQ(s.out, "x1\n");
  EXPECT_EQ(run({"kernel", "-p", "x0^3", "--rows", "1"}).code, 64);
}

TEST_F(Cli, Bench) {
  const fs::path csv = dir_ / "b.csv";
  const fs::path svg = dir_ / "b.svg";
  const std::vector<std::string> args{"bench", "--n", "2", "--d", "3", "--ks", "0,1", "--trials",
                                      "2", "--eps-min-exp", "-8", "--eps-max-exp", "-6",
                                      "--eps-step", "1", "--seed", "3"};
  const Result a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 4);
  auto with_files = args;
  with_files.insert(with_files.end(), {"--csv", csv.string(), "--svg", svg.string()});
  EXPECT_EQ(run(with_files).code, 0);
  EXPECT_EQ(slurp(csv), a.out);
  EXPECT_TRUE(fs::exists(svg));

  const fs::path cfg = dir_ / "c.json";
  std::ofstream(cfg) << R"({"n": 2, "d": 3, "ks": [0, 1], "trials": 2, "eps": [1e-8, 1e-7, 1e-6], "seed": 3})";
  EXPECT_EQ(run({"bench", "--config", cfg.string()}).out, a.out);
  EXPECT_EQ(run({"bench", "--ks", "0,9"}).code, 65);
}

}  // namespace
