#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gadkit/apolarity.hpp"
#include "gadkit/benchlab.hpp"

namespace gadkit {
namespace {

TEST(EpsGrid, DefaultHas29Levels) {
  const auto g = eps_grid();
  ASSERT_EQ(g.size(), 29u);
  EXPECT_DOUBLE_EQ(g.front(), 1e-14);
  EXPECT_DOUBLE_EQ(g.back(), 1.0);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
}

TEST(Config, Validate) {
  BenchConfig c;
  EXPECT_NO_THROW(validate(c));
  c.eps = {0.0, 1e-3};
  EXPECT_NO_THROW(validate(c));
  c.eps = {1e-3, 1e-4};
  EXPECT_THROW(validate(c), ContractError);
  c = BenchConfig{};
  c.ks = {0, 4};
  EXPECT_THROW(validate(c), ContractError);
  c = BenchConfig{};
  c.trials = 0;
  EXPECT_THROW(validate(c), ContractError);
  c = BenchConfig{};
  c.ks.clear();
  EXPECT_THROW(validate(c), ContractError);
}

TEST(RandomGad, ShapeAndSeparation) {
  Rng rng(41);
  const GAD g = random_gad(4, 3, {0, 1, 2}, rng);
  EXPECT_NO_THROW(validate(g));
  ASSERT_EQ(g.terms.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(g.terms[i].k, static_cast<int>(i));
    EXPECT_EQ(g.terms[i].ell[0], cplx(1.0));
  }
  EXPECT_EQ(gad_rank(g), 1 + 2 + 6);
}

TEST(Perturb, UnitApolarDirection) {
  Rng rng(42);
  const Poly f = random_homogeneous(3, 4, rng);
  for (double eps : {1e-8, 1e-2, 1.0}) {
    const Poly g = perturb(f, eps, rng);
    EXPECT_NEAR(apolar_norm(g - f), eps, 1e-9 * std::max(eps, apolar_norm(f)));
  }
  EXPECT_EQ(perturb(f, 0.0, rng), f);
}

TEST(TrialRng, IndependentStreams) {
  Rng a = trial_rng(1, 0, 0, 0);
  Rng b = trial_rng(1, 0, 0, 0);
  Rng c = trial_rng(1, 0, 0, 1);
  Rng d = trial_rng(2, 0, 0, 0);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

BenchConfig small_config() {
  BenchConfig c;
  c.n = 3;
  c.d = 3;
  c.ks = {0, 1};
  c.eps = {1e-10, 1e-8, 1e-6};
  c.trials = 4;
  c.seed = 17;
  return c;
}

TEST(Sweep, DeterministicAcrossThreads) {
  BenchConfig c = small_config();
  const auto a = rows_to_csv(sweep(c));
  c.threads = 3;
  const auto b = rows_to_csv(sweep(c));
  EXPECT_EQ(a, b);
}

TEST(Sweep, ErrorScalesWithEps) {
  const auto rows = sweep(small_config());
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.failures, 0);
    EXPECT_LE(r.min, r.median);
    EXPECT_LE(r.median, r.max);
    EXPECT_LT(r.median, 100 * r.eps);
  }
  EXPECT_NEAR(loglog_slope(rows, 1e-10, 1e-6), 1.0, 0.2);
}

TEST(Output, CsvAndSvg) {
  std::vector<BenchRow> rows;
  for (double e : eps_grid()) rows.push_back({e, e, e / 2, 2 * e, 0});
  rows.push_back({2.0, std::nan(""), std::nan(""), std::nan(""), 10});
  const std::string csv = rows_to_csv(rows);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 31);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "eps,median,min,max,failures");
  EXPECT_NE(csv.find("2.0000000000000000e+00,nan,nan,nan,10"), std::string::npos);
  const std::string svg = rows_to_svg(rows, "t");
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NEAR(loglog_slope(rows, 1e-14, 1.0), 1.0, 1e-12);

  const auto dir = std::filesystem::temp_directory_path() / "gadkit_bench_test";
  std::filesystem::create_directories(dir);
  emit(rows, (dir / "a.csv").string(), (dir / "a.svg").string());
  EXPECT_TRUE(std::filesystem::exists(dir / "a.svg"));
  std::ifstream in(dir / "a.csv");
  std::string all((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(all, csv);
  EXPECT_THROW(emit(rows, (dir / "missing" / "x.csv").string()), std::runtime_error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace gadkit
