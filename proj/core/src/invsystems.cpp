#include "gadkit/invsystems.hpp"

#include <algorithm>
#include <cmath>

namespace gadkit {

namespace {

// Index of the coefficient used as pivot: 0 unless l_0 is negligible.
std::size_t pivot_index(const LinearForm& ell) {
  double best = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < ell.nvars(); ++i) {
    if (std::abs(ell[i]) > best) {
      best = std::abs(ell[i]);
      arg = i;
    }
  }
  return std::abs(ell[0]) > 1e-8 * best ? 0 : arg;
}

// omega rewritten in the variables (l, x_1, ..., x_n): x0 -> (l - sum xi_j x_j) / xi_0.
Poly in_ell_coordinates(const Poly& omega, const LinearForm& ell) {
  const std::size_t n1 = omega.nvars();
  if (ell.nvars() != n1) throw DimensionError("omega_dlv: linear form length mismatch");
  if (ell[0] == cplx{}) throw ContractError("omega_dlv: the x0 coefficient of l must be nonzero");
  CMatrix m = CMatrix::Identity(static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n1));
  m(0, 0) = 1.0 / ell[0];
  for (std::size_t j = 1; j < n1; ++j) m(0, static_cast<Eigen::Index>(j)) = -ell[j] / ell[0];
  return CoordChange(m).apply(omega);
}

int form_degree(const Poly& omega, const char* who) {
  if (omega.is_zero()) throw ContractError(std::string(who) + ": omega must be nonzero");
  auto k = omega.homogeneous_degree();
  if (!k) throw ContractError(std::string(who) + ": omega must be homogeneous");
  return *k;
}

}  // namespace

void validate(const GAD& g) {
  if (g.n < 1) throw ContractError("GAD: n must be >= 1");
  if (g.d < 0) throw ContractError("GAD: negative degree");
  const auto n1 = static_cast<std::size_t>(g.n + 1);
  for (std::size_t i = 0; i < g.terms.size(); ++i) {
    const auto& t = g.terms[i];
    const std::string where = "GAD term " + std::to_string(i);
    if (t.omega.nvars() != n1 || t.ell.nvars() != n1)
      throw ContractError(where + ": expected " + std::to_string(n1) + " variables");
    if (t.k < 0 || t.k > g.d) throw ContractError(where + ": k outside [0, d]");
    if (!t.omega.is_homogeneous_of(t.k))
      throw ContractError(where + ": omega is not homogeneous of degree k");
  }
  for (std::size_t i = 0; i < g.terms.size(); ++i) {
    for (std::size_t j = i + 1; j < g.terms.size(); ++j) {
      const auto& a = g.terms[i].ell;
      const auto& b = g.terms[j].ell;
      cplx dot{};
      for (std::size_t t = 0; t < n1; ++t) dot += std::conj(a[t]) * b[t];
      const double cosine = std::min(1.0, std::abs(dot) / (a.norm() * b.norm()));
      if (std::sqrt(std::max(0.0, 2.0 - 2.0 * cosine)) < 1e-10)
        throw ContractError("GAD: supports " + std::to_string(i) + " and " + std::to_string(j) +
                            " are proportional");
    }
  }
}

std::vector<std::string> gad_warnings(const GAD& g) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < g.terms.size(); ++i) {
    const auto& t = g.terms[i];
    if (t.omega.is_zero()) {
      out.push_back("term " + std::to_string(i) + ": omega is zero");
      continue;
    }
    const std::size_t p = pivot_index(t.ell);
    const CoordChange perm = CoordChange::swap(t.ell.nvars(), 0, p);
    const Poly w = in_ell_coordinates(perm.apply(t.omega), perm.apply(t.ell));
    // remainder modulo l: the part free of the l variable
    double rem = 0.0;
    for (const auto& [alpha, c] : w.terms())
      if (alpha[0] == 0) rem += std::norm(c);
    if (std::sqrt(rem) < 1e-10 * coeff_norm(t.omega))
      out.push_back("term " + std::to_string(i) + ": the support divides omega");
  }
  return out;
}

Poly omega_dlv(const Poly& omega, const LinearForm& ell, int d) {
  const int k = omega.is_zero() ? 0 : form_degree(omega, "omega_dlv");
  if (d < k) throw ContractError("omega_dlv: d must be >= deg(omega)");
  if (omega.nvars() < 2) throw ContractError("omega_dlv: need at least two variables");
  const Poly w = in_ell_coordinates(omega, ell);
  const double dfact = factorial(d);
  Poly out(omega.nvars() - 1);
  for (const auto& [alpha, c] : w.terms()) {
    const MultiIndex b = alpha.dehomogenize();
    out.add_term(b, c * (factorial(d - b.degree()) / dfact));
  }
  return out;
}

int inverse_system_dim(const Poly& q) {
  if (q.is_zero()) throw ContractError("inverse_system_dim: polynomial is zero");
  const int deg = q.degree();
  const auto basis = monomials(q.nvars(), deg, false);
  const auto alphas = monomials(q.nvars(), deg, false);
  CMatrix m(static_cast<Eigen::Index>(alphas.size()), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < alphas.size(); ++i)
    m.row(static_cast<Eigen::Index>(i)) = coeff_vector(diff(q, alphas[i]), basis).transpose();
  Eigen::BDCSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double cut = 1e-10 * s(0);
  int r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return r;
}

int ell_rank(const Poly& omega, const LinearForm& ell) {
  const int k = form_degree(omega, "ell_rank");
  if (ell.nvars() != omega.nvars()) throw DimensionError("ell_rank: linear form length mismatch");
  const std::size_t p = pivot_index(ell);
  const CoordChange perm = CoordChange::swap(ell.nvars(), 0, p);
  return inverse_system_dim(omega_dlv(perm.apply(omega), perm.apply(ell), k));
}

int gad_rank(const GAD& g) {
  int r = 0;
  for (const auto& t : g.terms) r += ell_rank(t.omega, t.ell);
  return r;
}

DualSeries polyexp_truncated(const Poly& omega, std::span<const cplx> xi, int d) {
  const std::size_t n = xi.size();
  if (omega.nvars() != n + 1) throw DimensionError("polyexp_truncated: point length mismatch");
  std::vector<cplx> l(n + 1);
  l[0] = 1.0;
  std::copy(xi.begin(), xi.end(), l.begin() + 1);
  const Poly q = omega_dlv(omega, LinearForm(std::move(l)), d);

  // xi^gamma for every gamma of degree <= d
  DualSeries out(n, d);
  for (const auto& beta : monomials(n, d, false)) {
    cplx v{};
    for (const auto& [alpha, c] : q.terms()) {
      if (!alpha.divides(beta)) continue;
      const MultiIndex rest = beta - alpha;
      cplx term = c * (beta.factorial() / rest.factorial());
      for (std::size_t i = 0; i < n; ++i)
        if (rest[i]) term *= std::pow(xi[i], rest[i]);
      v += term;
    }
    out.set(beta, v);
  }
  return out;
}

Poly reconstruct(const GAD& g) {
  Poly out(static_cast<std::size_t>(g.n + 1));
  for (const auto& t : g.terms) out += t.omega * pow(t.ell.to_poly(), g.d - t.k);
  return out;
}

}  // namespace gadkit
