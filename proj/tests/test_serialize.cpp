#include <gtest/gtest.h>

#include "gadkit/poly_io.hpp"
#include "gadkit/serialize.hpp"

namespace gadkit {
namespace {

GAD example() {
  GAD g;
  g.n = 2;
  g.d = 4;
  g.terms.push_back({parse_poly("x1^2 - (0.5+1i)*x0*x2", 3), LinearForm({1.0, 0.0, 0.0}), 2});
  g.terms.push_back({Poly::constant(3, 0.1), LinearForm({1.0, 1.0 / 3.0, -1.0}), 0});
  return g;
}

TEST(GadJson, RoundTrip) {
  const GAD g = example();
  const std::string s = gad_to_json(g);
  const GAD h = gad_from_json(s);
  EXPECT_EQ(gad_to_json(h), s);
  EXPECT_EQ(reconstruct(h), reconstruct(g));
  EXPECT_NE(s.find("\"(1,0,1)\""), std::string::npos);
}

TEST(GadJson, LenientInputs) {
  const GAD g = gad_from_json(R"j({"n": 1, "d": 3, "terms": [
      {"ell": [1, [0, 2]], "omega": "x0*x1"},
      {"ell": [1, 0], "omega": 4},
      {"ell": [0, 1], "omega": {"(1,0)": [0, 1]}, "k": 1}]})j");
  ASSERT_EQ(g.terms.size(), 3u);
  EXPECT_EQ(g.terms[0].k, 2);
  EXPECT_EQ(g.terms[1].k, 0);
  EXPECT_EQ(g.terms[0].ell[1], cplx(0.0, 2.0));
  EXPECT_EQ(g.terms[2].omega.coeff({1, 0}), cplx(0.0, 1.0));
}

TEST(GadJson, Errors) {
  try {
    gad_from_json("{\n  \"n\": 1,\n  \"d\": ]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(gad_from_json(R"({"n": 1, "d": 1, "terms": [{"ell": [1, 0], "omega": "x0^2"}]})"),
               ContractError);
  EXPECT_THROW(gad_from_json(R"({"n": 1, "terms": []})"), ParseError);
  EXPECT_THROW(gad_from_json(R"({"n": 1, "d": 2, "terms": [{"ell": [1], "omega": 1}]})"),
               ParseError);
}

TEST(ReportJson, KeysAndNonFinite) {
  DecompositionReport r;
  r.gad = example();
  r.rank = 4;
  r.multiplicities = {3, 1};
  r.nil_indices = {3, 1};
  r.degrees = {2, 0};
  r.reconstruction_error = std::numeric_limits<double>::infinity();
  r.coord_change = CMatrix::Identity(3, 3);
  const std::string s = report_to_json(r);
  for (const char* key : {"\"gad\"", "\"rank\": 4", "\"multiplicities\"", "\"nil_indices\"",
                          "\"degrees\"", "\"relative_apolar_error\"", "\"diagnostics\"",
                          "\"options\"", "\"reconstruction_error\": null"})
    EXPECT_NE(s.find(key), std::string::npos) << key;
  EXPECT_LT(s.find("\"degrees\""), s.find("\"gad\""));
}

TEST(FailureJson, CarriesTrace) {
  PipelineTrace t;
  t.rank = 6;
  t.multiplicities = {6};
  t.nil_indices = {5};
  const std::string s = failure_to_json(DegreeBoundError("too deep", t));
  EXPECT_NE(s.find("\"exit_code\": 1"), std::string::npos);
  EXPECT_NE(s.find("\"error\": \"too deep\""), std::string::npos);
  EXPECT_NE(s.find("\"nil_indices\": [5]"), std::string::npos);
}

TEST(DualJson, Values) {
  const std::string s = dual_series_to_json(check_f(parse_poly("3*x0^2 + x1^2", 2)));
  EXPECT_NE(s.find("\"(0)\": [3.0, 0.0]"), std::string::npos);
  EXPECT_NE(s.find("\"(2)\": [1.0, 0.0]"), std::string::npos);
}

TEST(BenchConfigJson, OverridesDefaults) {
  const BenchConfig c = bench_config_from_json(
      R"({"n": 4, "ks": [1, 2], "eps_min_exp": -6, "eps_max_exp": -2, "eps_step": 1, "auto": true})");
  EXPECT_EQ(c.n, 4);
  EXPECT_EQ(c.d, 3);
  EXPECT_EQ(c.ks, (std::vector<int>{1, 2}));
  EXPECT_EQ(c.eps.size(), 5u);
  EXPECT_TRUE(c.auto_mode);
  EXPECT_EQ(c.seed, kDefaultSeed);
  EXPECT_EQ(bench_config_from_json(R"({"eps": [0, 0.1]})").eps, (std::vector<double>{0.0, 0.1}));
  EXPECT_THROW(bench_config_from_json(R"({"trials": 0})"), ContractError);
  EXPECT_THROW(bench_config_from_json("{"), ParseError);
}

}  // namespace
}  // namespace gadkit
