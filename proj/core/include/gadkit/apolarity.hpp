#pragma once

// Apolar inner product, the affine dual functional of a form, and the
// truncated Hankel (catalecticant) matrices built from it.

#include <optional>
#include <string>
#include <vector>

#include "gadkit/polycore.hpp"

namespace gadkit {

/// <f,g> = sum_alpha binom(d,alpha)^{-1} f_alpha g_alpha for forms of degree d.
cplx apolar_product(const Poly& f, const Poly& g);

/// sqrt(<f, conj f>).
double apolar_norm(const Poly& f);

/// A linear functional on affine polynomials of degree <= degree_bound,
/// stored by its values on monomials: value(beta) = phi(x^beta).
class DualSeries {
 public:
  DualSeries(std::size_t nvars_affine, int degree_bound);

  std::size_t nvars() const noexcept { return nvars_; }
  int degree_bound() const noexcept { return degree_bound_; }
  const Poly::TermMap& values() const noexcept { return values_; }

  /// Value on x^beta; zero when not stored. Throws when |beta| > degree_bound.
  cplx value(const MultiIndex& beta) const;
  void set(const MultiIndex& beta, cplx v);
  /// phi(p) = sum_beta p_beta value(beta).
  cplx apply(const Poly& p) const;

  DualSeries& operator+=(const DualSeries& other);
  DualSeries& operator*=(cplx c);

 private:
  std::size_t nvars_;
  int degree_bound_;
  Poly::TermMap values_;
};

/// Max |a(beta) - b(beta)| over all stored entries of either series.
double max_abs_diff(const DualSeries& a, const DualSeries& b);

/// The dehomogenized dual of a form f of degree d in n+1 variables:
/// value(beta) = (d-|beta|)! beta! / d! * f_{(d-|beta|, beta)}.
DualSeries check_f(const Poly& f);

/// Default split for degree d: c = d - floor((d-1)/2).
int default_split(int d);

/// Row set A' (degree <= d-c), column set A (degree <= c-1) and the matrices
/// H_0[beta,alpha] = phi(x^{beta+alpha}), H_j[beta,alpha] = phi(x^{beta+alpha+e_j}).
struct HankelFamily {
  std::vector<MultiIndex> rows;  // A'
  std::vector<MultiIndex> cols;  // A
  int split = 0;                 // c
  std::vector<CMatrix> matrices; // H_0 .. H_n

  std::size_t nvars() const { return matrices.empty() ? 0 : matrices.size() - 1; }
  const CMatrix& h0() const { return matrices.front(); }
};

HankelFamily hankel_family(const DualSeries& fs, int d, std::optional<int> split = std::nullopt);

/// Plain Hankel matrix phi(x^{beta+alpha}) for beta of degree <= row_degree and
/// alpha of degree <= col_degree.
CMatrix hankel_matrix(const DualSeries& fs, int row_degree, int col_degree);

/// Numerical column space and row space of a random combination of the family.
struct QuotientBasis {
  int rank = 0;
  CMatrix left;   // |A'| x r, orthonormal columns
  CMatrix right;  // |A| x r, orthonormal columns
  Eigen::VectorXd singular_values;
  /// sigma_{r+1} / sigma_1, or 0 when r is the full dimension.
  double tail_ratio() const;
};

/// SVD of sum_{j=0}^n lambda_j H_j with standard-normal lambda_j. The rank is
/// forced_rank when given, otherwise the count of sigma_i >= svd_tol * sigma_1.
QuotientBasis probe_and_rank(const HankelFamily& fam, Rng& rng, double svd_tol = 1e-8,
                             std::optional<int> forced_rank = std::nullopt);

/// Orthonormal basis of the numerical null space of a matrix whose columns are
/// indexed by `cols`, returned as polynomials in those monomials.
std::vector<Poly> hankel_kernel(const CMatrix& h, const std::vector<MultiIndex>& cols,
                                double svd_tol = 1e-8);
/// Null space of the family's H_0.
std::vector<Poly> hankel_kernel(const HankelFamily& fam, double svd_tol = 1e-8);

/// Dense CSV, row-major, entries as "a+bi" / "a-bi".
std::string matrix_to_csv(const CMatrix& m);

}  // namespace gadkit
