#include <gtest/gtest.h>

#include "gadkit/invsystems.hpp"
#include "gadkit/poly_io.hpp"
#include "oracles/oracles.hpp"

namespace gadkit {
namespace {

Poly P(const char* s, std::size_t n = 3) { return parse_poly(s, n); }

const char* kOmega = "x0^3 + x0^2*x1 + x0*x1*x2 + x1*x2^2 + x2^3";

TEST(OmegaDlv, FrozenExample) {
  const Poly q = omega_dlv(P(kOmega), LinearForm({1.0, 1.0, 0.0}), 3);
  EXPECT_EQ(q.nvars(), 2u);
  const auto expected = oracle::worked_omega_dlv();
  EXPECT_EQ(q.size(), expected.size());
  for (const auto& [beta, v] : expected) EXPECT_NEAR(std::abs(q.coeff(MultiIndex(beta)) - v), 0.0, 1e-14);
}

TEST(OmegaDlv, NeedsPivot) {
  EXPECT_THROW(omega_dlv(P(kOmega), LinearForm({0.0, 1.0, 0.0}), 3), ContractError);
}

TEST(EllRank, FrozenCases) {
  for (const auto& c : oracle::ell_rank_cases()) {
    SCOPED_TRACE(c.omega);
    EXPECT_EQ(ell_rank(P(c.omega), LinearForm(c.ell)), c.rank);
  }
}

TEST(EllRank, IndependentOfDegree) {
  const Poly omega = P(kOmega);
  const LinearForm l({1.0, 1.0, 0.0});
  for (int d : {3, 4, 6}) EXPECT_EQ(inverse_system_dim(omega_dlv(omega, l, d)), 6) << d;
}

TEST(EllRank, InvariantUnderCoordinateChange) {
  Rng rng(21);
  for (const auto& c : oracle::ell_rank_cases()) {
    const CoordChange q = CoordChange::random_orthogonal(3, rng);
    EXPECT_EQ(ell_rank(q.apply(P(c.omega)), q.apply(LinearForm(c.ell))), c.rank)
        << c.omega;
  }
}

TEST(InverseSystem, Dimensions) {
  EXPECT_EQ(inverse_system_dim(Poly::constant(2, 1.0)), 1);
  EXPECT_EQ(inverse_system_dim(P("x0^3", 2)), 4);
  EXPECT_EQ(inverse_system_dim(P("x0*x1", 2)), 4);
  EXPECT_EQ(inverse_system_dim(P("x0^2 + x1^2", 2)), 4);
}

TEST(Polyexp, EqualsDualOfTerm) {
  Rng rng(22);
  std::normal_distribution<double> nd;
  for (int k = 0; k <= 3; ++k) {
    const int d = 5;
    const std::vector<cplx> xi{nd(rng), nd(rng)};
    const Poly omega = random_homogeneous(3, k, rng);
    const LinearForm l({1.0, xi[0], xi[1]});
    const DualSeries a = polyexp_truncated(omega, xi, d);
    const DualSeries b = check_f(omega * pow(l.to_poly(), d - k));
    double scale = 0.0;
    for (const auto& [beta, v] : b.values()) scale = std::max(scale, std::abs(v));
    EXPECT_LE(max_abs_diff(a, b), 1e-11 * scale) << k;
  }
}

TEST(Gad, ValidateAndRank) {
  GAD g;
  g.n = 2;
  g.d = 4;
  g.terms.push_back({P("x1^2"), LinearForm({1.0, 0.0, 0.0}), 2});
  g.terms.push_back({P("1", 3), LinearForm({1.0, 1.0, -1.0}), 0});
  EXPECT_NO_THROW(validate(g));
  EXPECT_EQ(gad_rank(g), 4);
  EXPECT_EQ(reconstruct(g), P("x1^2*x0^2") + pow(P("x0 + x1 - x2"), 4));

  GAD bad = g;
  bad.terms[1].ell = LinearForm({-2.0, 0.0, 0.0});
  EXPECT_THROW(validate(bad), ContractError);
  bad = g;
  bad.terms[0].k = 3;
  EXPECT_THROW(validate(bad), ContractError);
  bad = g;
  bad.terms[0].k = 5;
  bad.terms[0].omega = P("x1^5");
  EXPECT_THROW(validate(bad), ContractError);
  bad = g;
  bad.terms[0].omega = P("x1^2", 2);
  EXPECT_THROW(validate(bad), ContractError);
}

TEST(Gad, DivisibilityWarning) {
  GAD g;
  g.n = 1;
  g.d = 3;
  g.terms.push_back({P("x0*x1 + x1^2", 2), LinearForm({0.0, 1.0}), 2});
  EXPECT_NO_THROW(validate(g));
  EXPECT_EQ(gad_warnings(g).size(), 1u);
  g.terms[0].omega = P("x0^2", 2);
  EXPECT_TRUE(gad_warnings(g).empty());
}

}  // namespace
}  // namespace gadkit
