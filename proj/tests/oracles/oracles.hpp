#pragma once

// Reference implementations that share no code with the library beyond the
// Poly container, plus exact values produced by derive_values.py.

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "gadkit/polycore.hpp"

namespace gadkit::oracle {

/// (sum_i l_i x_i)^m by the multinomial theorem over all exponent vectors.
inline Poly multinomial_power(const std::vector<cplx>& l, int m) {
  const std::size_t n = l.size();
  Poly out(n);
  std::vector<int> e(n, 0);
  // enumerate compositions of m into n parts
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      double coef = std::tgamma(m + 1.0);
      cplx c = 1.0;
      for (std::size_t t = 0; t < n; ++t) {
        coef /= std::tgamma(e[t] + 1.0);
        c *= std::pow(l[t], e[t]);
      }
      out.add_term(MultiIndex(e), c * coef);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      e[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, m);
  return out;
}

/// d/dx_var applied term by term.
inline Poly partial(const Poly& p, std::size_t var) {
  Poly out(p.nvars());
  for (const auto& [alpha, c] : p.terms()) {
    if (alpha[var] == 0) continue;
    std::vector<int> e(alpha.exponents().begin(), alpha.exponents().end());
    const int k = e[var]--;
    out.add_term(MultiIndex(e), c * static_cast<double>(k));
  }
  return out;
}

/// g(d/dx)(f) by repeated single partial derivatives.
inline Poly diff_op(const Poly& g, const Poly& f) {
  Poly out(f.nvars());
  for (const auto& [alpha, c] : g.terms()) {
    Poly t = f;
    for (std::size_t v = 0; v < alpha.size(); ++v)
      for (int r = 0; r < alpha[v]; ++r) t = partial(t, v);
    out += t * c;
  }
  return out;
}

/// (1/d!) g(d/dx)(f): the apolar product through differentiation.
inline cplx apolar_by_derivatives(const Poly& f, const Poly& g, int d) {
  const Poly r = diff_op(g, f);
  return r.coeff(MultiIndex::zero(f.nvars())) / std::tgamma(d + 1.0);
}

/// Horner-free evaluation straight from the term map.
inline cplx eval(const Poly& p, const std::vector<cplx>& x) {
  cplx s{};
  for (const auto& [alpha, c] : p.terms()) {
    cplx t = c;
    for (std::size_t i = 0; i < x.size(); ++i) t *= std::pow(x[i], alpha[i]);
    s += t;
  }
  return s;
}

// Exact values (see derive_values.py). Variables x, y, z are x0, x1, x2.

/// omega = x^3 + x^2 y + x y z + y z^2 + z^3, l = x + y, d = 3:
/// omega^{3,l,v} = -y^2 z/6 + y^2/6 + y z^2/6 + y z/6 - 2y/3 + 1 + z^3/6 in (y, z).
inline std::map<std::vector<int>, double> worked_omega_dlv() {
  return {{{0, 0}, 1.0},        {{1, 0}, -2.0 / 3.0}, {{2, 0}, 1.0 / 6.0}, {{1, 1}, 1.0 / 6.0},
          {{2, 1}, -1.0 / 6.0}, {{1, 2}, 1.0 / 6.0},  {{0, 3}, 1.0 / 6.0}};
}

struct EllRankCase {
  const char* omega;
  std::vector<cplx> ell;
  int rank;
};

inline std::vector<EllRankCase> ell_rank_cases() {
  return {
      {"x0^2", {1, 2, -1}, 3},
      {"x1^2", {1, 0, 0}, 3},
      {"x1*x2", {1, 0, 0}, 4},
      {"x0*x1*x2", {1, 1, 1}, 6},
      {"x1^3 + x2^3", {1, 0, 0}, 6},
      {"x1^2*x2", {2, 1, 0}, 6},
      {"x0^2*x1 + x2^3", {1, -1, 3}, 6},
      {"x1^4", {1, 0, 0}, 5},
      {"x0^3 + x0^2*x1 + x0*x1*x2 + x1*x2^2 + x2^3", {1, 1, 0}, 6},
  };
}

/// f = x1 (x0 + x1 + 2 x2)^4 + (x0 - x1 + x2)^5: Hankel rank with rows and
/// columns of degree <= 2 is 3 = 2 + 1.
inline constexpr int kKroneckerRank = 3;

/// check_f of 3 x0^3 + 2 x0^2 x1 - x0 x1 x2 + 5 x2^3 (nonzero values).
inline std::map<std::vector<int>, double> small_check_f() {
  return {{{0, 0}, 3.0}, {{1, 0}, 2.0 / 3.0}, {{1, 1}, -1.0 / 6.0}, {{0, 3}, 5.0}};
}

}  // namespace gadkit::oracle
