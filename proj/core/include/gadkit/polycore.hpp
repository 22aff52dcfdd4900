#pragma once

// Sparse multivariate polynomials over complex doubles.
//
// A Poly is a finite map from exponent vectors to coefficients. Terms are kept
// in graded lexicographic order (total degree first, then larger leading
// exponents first), which is also the order used whenever a monomial index set
// is materialized as matrix rows or columns.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gadkit/errors.hpp"

namespace gadkit {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents)
      : MultiIndex(std::vector<int>(exponents)) {}

  static MultiIndex zero(std::size_t nvars);
  static MultiIndex unit(std::size_t nvars, std::size_t var);

  std::size_t size() const noexcept { return exps_.size(); }
  int degree() const noexcept { return degree_; }
  int operator[](std::size_t i) const { return exps_[i]; }
  std::span<const int> exponents() const noexcept { return exps_; }

  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise difference; requires other <= *this entrywise.
  MultiIndex operator-(const MultiIndex& other) const;
  /// True when every entry of *this is <= the matching entry of other.
  bool divides(const MultiIndex& other) const;

  /// alpha! = prod alpha_i!
  double factorial() const;

  /// Drop the leading exponent (homogeneous -> affine chart x0 = 1).
  MultiIndex dehomogenize() const;
  /// Prepend d - |beta| so the result has total degree d.
  MultiIndex homogenize(int d) const;

  /// "(a0,a1,...)"
  std::string to_string() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.exps_ == b.exps_; }

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// Graded lexicographic order: lower total degree first; within a degree the
/// exponent vector that is lexicographically larger comes first, so
/// x1 < x2 < x1^2 < x1 x2 < x2^2 in two variables.
struct GrlexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// All exponent vectors in nvars variables with degree <= max_degree (or
/// exactly max_degree when homogeneous_only), in graded lexicographic order.
std::vector<MultiIndex> monomials(std::size_t nvars, int max_degree, bool homogeneous_only);

double factorial(int n);
double binomial(int n, int k);

class Poly {
 public:
  using TermMap = std::map<MultiIndex, cplx, GrlexLess>;

  explicit Poly(std::size_t nvars = 1);

  static Poly constant(std::size_t nvars, cplx c);
  static Poly variable(std::size_t nvars, std::size_t var, cplx c = 1.0);
  static Poly monomial(const MultiIndex& alpha, cplx c = 1.0);

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  cplx coeff(const MultiIndex& alpha) const;
  /// Adds c to the coefficient of alpha; exact zeros are removed.
  void add_term(const MultiIndex& alpha, cplx c);

  /// Highest total degree of a stored term; -1 for the zero polynomial.
  int degree() const;
  /// The common degree when every term shares it; nullopt otherwise or when zero.
  std::optional<int> homogeneous_degree() const;
  /// Every stored term has total degree d (vacuously true for zero).
  bool is_homogeneous_of(int d) const;

  /// Terms of exactly degree t.
  Poly graded_part(int t) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& q);
  Poly& operator-=(const Poly& q);
  Poly& operator*=(cplx c);

  friend Poly operator+(Poly p, const Poly& q) { return p += q; }
  friend Poly operator-(Poly p, const Poly& q) { return p -= q; }
  friend Poly operator*(Poly p, cplx c) { return p *= c; }
  friend Poly operator*(cplx c, Poly p) { return p *= c; }
  friend Poly operator*(const Poly& p, const Poly& q);

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_same_nvars(const Poly& q, const char* op) const;

  std::size_t nvars_;
  TermMap terms_;
};

Poly add(const Poly& p, const Poly& q);
Poly scale(const Poly& p, cplx c);
Poly mul(const Poly& p, const Poly& q);
Poly pow(const Poly& p, int e);

/// Complex conjugate of every coefficient.
Poly conj(const Poly& p);

/// Removes coefficients with |c| <= tol * max|c|.
Poly cleanup(const Poly& p, double tol);

/// Largest coefficient modulus (0 for the zero polynomial).
double max_abs_coeff(const Poly& p);
/// Euclidean norm of the coefficient vector.
double coeff_norm(const Poly& p);

/// Coefficient vector of p in the given monomial order.
CVector coeff_vector(const Poly& p, std::span<const MultiIndex> basis);
Poly from_coeff_vector(const CVector& v, std::span<const MultiIndex> basis);

/// d^alpha p, including the falling-factorial factors from the power rule.
Poly diff(const Poly& p, const MultiIndex& alpha);

/// g(d/dx)(f) = sum_alpha g_alpha d^alpha f
Poly apply_diff_op(const Poly& g, const Poly& f);

cplx evaluate(const Poly& p, std::span<const cplx> point);

/// Every degree-d monomial in nvars variables receives an independent
/// standard-normal real coefficient, drawn in graded lexicographic order.
Poly random_homogeneous(std::size_t nvars, int d, Rng& rng);

/// The form l = sum xi_i x_i.
class LinearForm {
 public:
  explicit LinearForm(std::vector<cplx> coeffs);

  std::size_t nvars() const noexcept { return coeffs_.size(); }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  cplx operator[](std::size_t i) const { return coeffs_[i]; }

  Poly to_poly() const;
  /// Scaled copy with the given factor.
  LinearForm scaled(cplx c) const;
  double norm() const;

 private:
  std::vector<cplx> coeffs_;
};

/// An invertible linear substitution of the variables.
///
/// apply(p) substitutes x_i -> sum_k phi(i,k) x_k, i.e. p(x) -> p(phi x).
/// With transpose = true the substitution uses phi^T instead.
class CoordChange {
 public:
  explicit CoordChange(CMatrix matrix);

  static CoordChange identity(std::size_t nvars);
  static CoordChange swap(std::size_t nvars, std::size_t i, std::size_t j);
  /// Haar-distributed real orthogonal matrix (QR of a Gaussian matrix).
  static CoordChange random_orthogonal(std::size_t nvars, Rng& rng);
  /// Real matrix with independent standard-normal entries.
  static CoordChange random_gaussian(std::size_t nvars, Rng& rng);

  std::size_t nvars() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const CMatrix& matrix() const noexcept { return matrix_; }
  const CMatrix& inverse_matrix() const noexcept { return inverse_; }

  CoordChange inverse() const;
  CoordChange transposed() const;

  Poly apply(const Poly& p, bool transpose = false) const;
  /// Image of a linear form under apply(): coefficient vector phi^T xi.
  LinearForm apply(const LinearForm& l) const;

 private:
  CoordChange(CMatrix matrix, CMatrix inverse);

  CMatrix matrix_;
  CMatrix inverse_;
};

Poly change_coords(const Poly& p, const CoordChange& phi, bool transpose = false);

}  // namespace gadkit
