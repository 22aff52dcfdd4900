#include <gtest/gtest.h>

#include "gadkit/polycore.hpp"
#include "gadkit/poly_io.hpp"
#include "oracles/oracles.hpp"

namespace gadkit {
namespace {

Poly P(const char* s, std::size_t n = 3) { return parse_poly(s, n); }

TEST(MultiIndex, Basics) {
  const MultiIndex a{2, 0, 1};
  EXPECT_EQ(a.degree(), 3);
  EXPECT_EQ(a.to_string(), "(2,0,1)");
  EXPECT_DOUBLE_EQ(a.factorial(), 2.0);
  EXPECT_EQ((a + MultiIndex{0, 1, 0}), (MultiIndex{2, 1, 1}));
  EXPECT_EQ((a - MultiIndex{1, 0, 1}), (MultiIndex{1, 0, 0}));
  EXPECT_TRUE((MultiIndex{1, 0, 1}).divides(a));
  EXPECT_FALSE((MultiIndex{0, 1, 0}).divides(a));
  EXPECT_EQ(a.dehomogenize(), (MultiIndex{0, 1}));
  EXPECT_EQ((MultiIndex{0, 1}).homogenize(3), (MultiIndex{2, 0, 1}));
  EXPECT_THROW(MultiIndex({-1, 0}), ContractError);
  EXPECT_THROW((MultiIndex{1, 0}) - (MultiIndex{0, 1}), ContractError);
}

TEST(Monomials, CountsAndOrder) {
  EXPECT_EQ(monomials(3, 2, false).size(), 10u);
  EXPECT_EQ(monomials(3, 4, true).size(), 15u);
  EXPECT_EQ(monomials(6, 3, true).size(), 56u);
  const auto m = monomials(2, 2, false);
  const std::vector<MultiIndex> expected{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  EXPECT_EQ(m, expected);
}

TEST(Factorial, Exact) {
  EXPECT_EQ(factorial(0), 1.0);
  EXPECT_EQ(factorial(10), 3628800.0);
  EXPECT_EQ(binomial(6, 2), 15.0);
  EXPECT_EQ(binomial(3, 5), 0.0);
}

TEST(Poly, Arithmetic) {
  const Poly p = P("x0 + x1");
  const Poly q = P("x0 - x1");
  EXPECT_EQ(p * q, P("x0^2 - x1^2"));
  EXPECT_EQ(p + q, P("2*x0"));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(pow(p, 0), Poly::constant(3, 1.0));
  EXPECT_EQ(p.degree(), 1);
  EXPECT_FALSE(P("x0 + x1^2").homogeneous_degree());
  EXPECT_EQ(P("x0^2 + x1").graded_part(2), P("x0^2"));
  EXPECT_THROW(P("x0") + Poly::variable(2, 0), DimensionError);
}

TEST(Poly, PowerMatchesMultinomialOracle) {
  Rng rng(7);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 3;
    std::vector<cplx> l(n);
    for (auto& c : l) c = {nd(rng), nd(rng)};
    const int m = 1 + trial % 5;
    const Poly a = pow(LinearForm(l).to_poly(), m);
    const Poly b = oracle::multinomial_power(l, m);
    EXPECT_LE(coeff_norm(a - b), 1e-11 * coeff_norm(b));
  }
}

TEST(Poly, Derivatives) {
  EXPECT_EQ(diff(P("x0^3"), {1, 0, 0}), P("3*x0^2"));
  EXPECT_TRUE(diff(P("x0^2"), {3, 0, 0}).is_zero());
  EXPECT_EQ(diff(P("x1*x2^3"), {0, 1, 1}), P("3*x2^2"));
  EXPECT_EQ(apply_diff_op(Poly::constant(3, 1.0), P("x0*x1")), P("x0*x1"));
  EXPECT_EQ(apply_diff_op(P("x0"), P("x0^2")), P("2*x0"));
}

TEST(Poly, DiffOpMatchesOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Poly g = random_homogeneous(3, 1 + trial % 3, rng);
    const Poly f = random_homogeneous(3, 4, rng);
    const Poly a = apply_diff_op(g, f);
    const Poly b = oracle::diff_op(g, f);
    EXPECT_LE(coeff_norm(a - b), 1e-12 * (1.0 + coeff_norm(b)));
  }
}

TEST(Poly, CoefficientVectors) {
  const auto basis = monomials(3, 2, true);
  const Poly p = P("x0^2 - 2*x1*x2 + (0+1i)*x2^2");
  EXPECT_EQ(from_coeff_vector(coeff_vector(p, basis), basis), p);
  EXPECT_EQ(cleanup(P("x0 + 1e-14*x1"), 1e-12), P("x0"));
  EXPECT_DOUBLE_EQ(max_abs_coeff(P("x0 - 3*x1")), 3.0);
  EXPECT_EQ(conj(P("(1+2i)*x0")), P("(1-2i)*x0"));
}

TEST(Poly, Evaluate) {
  const std::vector<cplx> pt{1.0, 2.0, -1.0};
  EXPECT_EQ(evaluate(P("x0^2*x1 + x2^3"), pt), cplx(1.0));
  Rng rng(3);
  const Poly f = random_homogeneous(3, 4, rng);
  EXPECT_NEAR(std::abs(evaluate(f, pt) - oracle::eval(f, pt)), 0.0, 1e-10);
}

TEST(LinearFormTest, Basics) {
  EXPECT_THROW(LinearForm({0.0, 0.0}), ContractError);
  const LinearForm l({3.0, 4.0});
  EXPECT_DOUBLE_EQ(l.norm(), 5.0);
  EXPECT_EQ(l.scaled(2.0).to_poly(), P("6*x0 + 8*x1", 2));
}

TEST(CoordChangeTest, SubstitutionConvention) {
  CMatrix m(2, 2);
  m << 1, 2, 0, 1;
  const CoordChange phi(m);
  // x0 -> x0 + 2 x1, x1 -> x1
  EXPECT_EQ(phi.apply(P("x0^2", 2)), P("x0^2 + 4*x0*x1 + 4*x1^2", 2));
  EXPECT_EQ(phi.apply(P("x0^2", 2), true), P("x0^2", 2));
  const LinearForm l({1.0, 5.0});
  EXPECT_EQ(phi.apply(l).to_poly(), phi.apply(l.to_poly()));
  EXPECT_THROW(CoordChange(CMatrix::Zero(2, 2)), ContractError);
}

TEST(CoordChangeTest, InverseAndOrthogonality) {
  Rng rng(5);
  const CoordChange q = CoordChange::random_orthogonal(4, rng);
  EXPECT_LE((q.matrix().adjoint() * q.matrix() - CMatrix::Identity(4, 4)).norm(), 1e-12);
  const Poly f = random_homogeneous(4, 3, rng);
  EXPECT_LE(coeff_norm(q.inverse().apply(q.apply(f)) - f), 1e-11 * coeff_norm(f));
  const CoordChange g = CoordChange::random_gaussian(4, rng);
  EXPECT_LE(coeff_norm(g.apply(g.inverse().apply(f)) - f), 1e-9 * coeff_norm(f));
  EXPECT_EQ(change_coords(f, q), q.apply(f));
}

}  // namespace
}  // namespace gadkit
