#include "gadkit/apolarity.hpp"

#include <cmath>
#include <sstream>

#include "gadkit/poly_io.hpp"

namespace gadkit {

namespace {

int common_degree(const Poly& f, const Poly& g) {
  if (f.nvars() != g.nvars()) throw ContractError("apolar_product: mismatched variable counts");
  auto df = f.homogeneous_degree();
  auto dg = g.homogeneous_degree();
  if ((!df && !f.is_zero()) || (!dg && !g.is_zero()))
    throw ContractError("apolar_product: arguments must be homogeneous");
  if (df && dg && *df != *dg) throw ContractError("apolar_product: degree mismatch");
  return df ? *df : (dg ? *dg : 0);
}

// binom(d; alpha) = d! / alpha!
double multinomial(int d, const MultiIndex& alpha) { return factorial(d) / alpha.factorial(); }

}  // namespace

cplx apolar_product(const Poly& f, const Poly& g) {
  const int d = common_degree(f, g);
  cplx sum{};
  const Poly& small = f.size() <= g.size() ? f : g;
  const Poly& large = f.size() <= g.size() ? g : f;
  for (const auto& [alpha, c] : small.terms()) {
    cplx o = large.coeff(alpha);
    if (o != cplx{}) sum += c * o / multinomial(d, alpha);
  }
  return sum;
}

double apolar_norm(const Poly& f) {
  if (f.is_zero()) return 0.0;
  auto d = f.homogeneous_degree();
  if (!d) throw ContractError("apolar_norm: argument must be homogeneous");
  double s = 0.0;
  for (const auto& [alpha, c] : f.terms()) s += std::norm(c) / multinomial(*d, alpha);
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// DualSeries

DualSeries::DualSeries(std::size_t nvars_affine, int degree_bound)
    : nvars_(nvars_affine), degree_bound_(degree_bound) {
  if (degree_bound < 0) throw ContractError("DualSeries: negative degree bound");
}

cplx DualSeries::value(const MultiIndex& beta) const {
  if (beta.size() != nvars_) throw DimensionError("DualSeries: multi-index length mismatch");
  if (beta.degree() > degree_bound_)
    throw ContractError("DualSeries: monomial degree " + std::to_string(beta.degree()) +
                        " exceeds the truncation degree " + std::to_string(degree_bound_));
  auto it = values_.find(beta);
  return it == values_.end() ? cplx{} : it->second;
}

void DualSeries::set(const MultiIndex& beta, cplx v) {
  if (beta.size() != nvars_) throw DimensionError("DualSeries: multi-index length mismatch");
  if (beta.degree() > degree_bound_) throw ContractError("DualSeries: degree exceeds bound");
  if (v == cplx{})
    values_.erase(beta);
  else
    values_[beta] = v;
}

cplx DualSeries::apply(const Poly& p) const {
  if (p.nvars() != nvars_) throw DimensionError("DualSeries::apply: variable count mismatch");
  cplx s{};
  for (const auto& [beta, c] : p.terms()) s += c * value(beta);
  return s;
}

DualSeries& DualSeries::operator+=(const DualSeries& other) {
  if (other.nvars_ != nvars_ || other.degree_bound_ != degree_bound_)
    throw DimensionError("DualSeries: shape mismatch");
  for (const auto& [beta, v] : other.values_) set(beta, value(beta) + v);
  return *this;
}

DualSeries& DualSeries::operator*=(cplx c) {
  for (auto it = values_.begin(); it != values_.end();) {
    it->second *= c;
    if (it->second == cplx{})
      it = values_.erase(it);
    else
      ++it;
  }
  return *this;
}

double max_abs_diff(const DualSeries& a, const DualSeries& b) {
  double m = 0.0;
  for (const auto& [beta, v] : a.values()) m = std::max(m, std::abs(v - b.value(beta)));
  for (const auto& [beta, v] : b.values()) m = std::max(m, std::abs(v - a.value(beta)));
  return m;
}

DualSeries check_f(const Poly& f) {
  if (f.nvars() < 2) throw ContractError("check_f: need at least two variables");
  int d = 0;
  if (!f.is_zero()) {
    auto hd = f.homogeneous_degree();
    if (!hd) throw ContractError("check_f: form must be homogeneous");
    d = *hd;
  }
  DualSeries out(f.nvars() - 1, d);
  const double dfact = factorial(d);
  for (const auto& [alpha, c] : f.terms()) {
    const MultiIndex beta = alpha.dehomogenize();
    out.set(beta, c * (factorial(alpha[0]) * beta.factorial() / dfact));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hankel matrices

int default_split(int d) { return d - (d - 1) / 2; }

namespace {

CMatrix hankel_block(const DualSeries& fs, const std::vector<MultiIndex>& rows,
                     const std::vector<MultiIndex>& cols, const MultiIndex& shift) {
  CMatrix h(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          fs.value(rows[i] + cols[j] + shift);
  return h;
}

}  // namespace

HankelFamily hankel_family(const DualSeries& fs, int d, std::optional<int> split) {
  const int c = split.value_or(default_split(d));
  if (c < 1 || c > d)
    throw ContractError("hankel_family: split " + std::to_string(c) + " outside [1, " +
                        std::to_string(d) + "]");
  if (d > fs.degree_bound()) throw ContractError("hankel_family: degree exceeds the dual series bound");
  const std::size_t n = fs.nvars();
  HankelFamily fam;
  fam.split = c;
  fam.rows = monomials(n, d - c, false);
  fam.cols = monomials(n, c - 1, false);
  fam.matrices.reserve(n + 1);
  fam.matrices.push_back(hankel_block(fs, fam.rows, fam.cols, MultiIndex::zero(n)));
  for (std::size_t j = 0; j < n; ++j)
    fam.matrices.push_back(hankel_block(fs, fam.rows, fam.cols, MultiIndex::unit(n, j)));
  return fam;
}

CMatrix hankel_matrix(const DualSeries& fs, int row_degree, int col_degree) {
  if (row_degree < 0 || col_degree < 0 || row_degree + col_degree > fs.degree_bound())
    throw ContractError("hankel_matrix: degrees exceed the dual series bound");
  const std::size_t n = fs.nvars();
  return hankel_block(fs, monomials(n, row_degree, false), monomials(n, col_degree, false),
                      MultiIndex::zero(n));
}

double QuotientBasis::tail_ratio() const {
  if (singular_values.size() == 0 || rank >= singular_values.size() || singular_values(0) == 0.0)
    return 0.0;
  return singular_values(rank) / singular_values(0);
}

QuotientBasis probe_and_rank(const HankelFamily& fam, Rng& rng, double svd_tol,
                             std::optional<int> forced_rank) {
  if (fam.matrices.empty()) throw ContractError("probe_and_rank: empty Hankel family");
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix probe = CMatrix::Zero(fam.h0().rows(), fam.h0().cols());
  for (const auto& h : fam.matrices) probe += normal(rng) * h;

  Eigen::BDCSVD<CMatrix> svd(probe, Eigen::ComputeThinU | Eigen::ComputeThinV);
  QuotientBasis qb;
  qb.singular_values = svd.singularValues();
  const auto maxrank = qb.singular_values.size();
  if (maxrank == 0 || qb.singular_values(0) == 0.0)
    throw NumericalError("probe_and_rank: the Hankel combination is identically zero");
  if (forced_rank) {
    if (*forced_rank < 1 || *forced_rank > maxrank)
      throw NumericalError("probe_and_rank: forced rank " + std::to_string(*forced_rank) +
                           " exceeds the matrix dimension " + std::to_string(maxrank));
    qb.rank = *forced_rank;
  } else {
    const double cut = svd_tol * qb.singular_values(0);
    int r = 0;
    while (r < maxrank && qb.singular_values(r) >= cut) ++r;
    qb.rank = r;
  }
  qb.left = svd.matrixU().leftCols(qb.rank);
  qb.right = svd.matrixV().leftCols(qb.rank);
  return qb;
}

std::vector<Poly> hankel_kernel(const CMatrix& h, const std::vector<MultiIndex>& cols,
                                double svd_tol) {
  if (static_cast<std::size_t>(h.cols()) != cols.size())
    throw DimensionError("hankel_kernel: column count mismatch");
  Eigen::BDCSVD<CMatrix> svd(h, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = s.size() ? svd_tol * s(0) : 0.0;
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut && s(r) > 0.0) ++r;
  std::vector<Poly> kernel;
  const CMatrix& v = svd.matrixV();
  for (Eigen::Index k = r; k < v.cols(); ++k) kernel.push_back(from_coeff_vector(v.col(k), cols));
  return kernel;
}

std::vector<Poly> hankel_kernel(const HankelFamily& fam, double svd_tol) {
  return hankel_kernel(fam.h0(), fam.cols, svd_tol);
}

std::string matrix_to_csv(const CMatrix& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      const cplx z = m(i, j);
      os << format_double(z.real()) << (std::signbit(z.imag()) ? '-' : '+')
         << format_double(std::abs(z.imag())) << 'i';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace gadkit
