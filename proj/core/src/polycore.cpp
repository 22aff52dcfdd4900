#include "gadkit/polycore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gadkit {

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw ContractError("MultiIndex: negative exponent");
    degree_ += e;
  }
}

MultiIndex MultiIndex::zero(std::size_t nvars) { return MultiIndex(std::vector<int>(nvars, 0)); }

MultiIndex MultiIndex::unit(std::size_t nvars, std::size_t var) {
  std::vector<int> e(nvars, 0);
  e.at(var) = 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionError("MultiIndex: length mismatch");
  std::vector<int> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exps_[i];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionError("MultiIndex: length mismatch");
  std::vector<int> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= other.exps_[i];
  return MultiIndex(std::move(e));
}

bool MultiIndex::divides(const MultiIndex& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int e : exps_) f *= gadkit::factorial(e);
  return f;
}

MultiIndex MultiIndex::dehomogenize() const {
  if (exps_.empty()) throw ContractError("dehomogenize: empty multi-index");
  return MultiIndex(std::vector<int>(exps_.begin() + 1, exps_.end()));
}

MultiIndex MultiIndex::homogenize(int d) const {
  if (degree_ > d) throw ContractError("homogenize: degree exceeds target");
  std::vector<int> e;
  e.reserve(exps_.size() + 1);
  e.push_back(d - degree_);
  e.insert(e.end(), exps_.begin(), exps_.end());
  return MultiIndex(std::move(e));
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(exps_[i]);
  }
  return s + ")";
}

bool GrlexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  auto ea = a.exponents();
  auto eb = b.exponents();
  return std::lexicographical_compare(eb.begin(), eb.end(), ea.begin(), ea.end());
}

namespace {

void fill_degree(std::size_t nvars, int remaining, std::vector<int>& cur, std::size_t pos,
                 std::vector<MultiIndex>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    fill_degree(nvars, remaining - e, cur, pos + 1, out);
  }
}

}  // namespace

std::vector<MultiIndex> monomials(std::size_t nvars, int max_degree, bool homogeneous_only) {
  if (nvars < 1) throw ContractError("monomials: nvars must be >= 1");
  std::vector<MultiIndex> out;
  if (max_degree < 0) return out;
  std::vector<int> cur(nvars, 0);
  for (int t = homogeneous_only ? max_degree : 0; t <= max_degree; ++t)
    fill_degree(nvars, t, cur, 0, out);
  return out;
}

double factorial(int n) {
  if (n < 0) throw ContractError("factorial: negative argument");
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0) throw ContractError("Poly: nvars must be >= 1");
}

Poly Poly::constant(std::size_t nvars, cplx c) {
  Poly p(nvars);
  p.add_term(MultiIndex::zero(nvars), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t var, cplx c) {
  Poly p(nvars);
  p.add_term(MultiIndex::unit(nvars, var), c);
  return p;
}

Poly Poly::monomial(const MultiIndex& alpha, cplx c) {
  Poly p(alpha.size());
  p.add_term(alpha, c);
  return p;
}

cplx Poly::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? cplx{} : it->second;
}

void Poly::add_term(const MultiIndex& alpha, cplx c) {
  if (alpha.size() != nvars_) throw DimensionError("Poly::add_term: multi-index length mismatch");
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

int Poly::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

std::optional<int> Poly::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int lo = terms_.begin()->first.degree();
  int hi = terms_.rbegin()->first.degree();
  if (lo != hi) return std::nullopt;
  return lo;
}

bool Poly::is_homogeneous_of(int d) const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.degree() == d && terms_.rbegin()->first.degree() == d;
}

Poly Poly::graded_part(int t) const {
  Poly out(nvars_);
  for (const auto& [alpha, c] : terms_)
    if (alpha.degree() == t) out.terms_.emplace_hint(out.terms_.end(), alpha, c);
  return out;
}

void Poly::check_same_nvars(const Poly& q, const char* op) const {
  if (q.nvars_ != nvars_)
    throw DimensionError(std::string("Poly ") + op + ": mismatched variable counts (" +
                         std::to_string(nvars_) + " vs " + std::to_string(q.nvars_) + ")");
}

Poly Poly::operator-() const {
  Poly out(*this);
  for (auto& [alpha, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& q) {
  check_same_nvars(q, "add");
  for (const auto& [alpha, c] : q.terms_) add_term(alpha, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& q) {
  check_same_nvars(q, "sub");
  for (const auto& [alpha, c] : q.terms_) add_term(alpha, -c);
  return *this;
}

Poly& Poly::operator*=(cplx c) {
  if (c == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    // underflow can still produce an exact zero
    if (it->second == cplx{})
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

Poly operator*(const Poly& p, const Poly& q) {
  p.check_same_nvars(q, "mul");
  Poly out(p.nvars_);
  for (const auto& [a, ca] : p.terms_)
    for (const auto& [b, cb] : q.terms_) out.add_term(a + b, ca * cb);
  return out;
}

Poly add(const Poly& p, const Poly& q) { return p + q; }
Poly scale(const Poly& p, cplx c) { return p * c; }
Poly mul(const Poly& p, const Poly& q) { return p * q; }

Poly pow(const Poly& p, int e) {
  if (e < 0) throw ContractError("pow: negative exponent");
  Poly result = Poly::constant(p.nvars(), 1.0);
  Poly base = p;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly conj(const Poly& p) {
  Poly out(p.nvars());
  for (const auto& [alpha, c] : p.terms()) out.add_term(alpha, std::conj(c));
  return out;
}

double max_abs_coeff(const Poly& p) {
  double m = 0.0;
  for (const auto& [alpha, c] : p.terms()) m = std::max(m, std::abs(c));
  return m;
}

double coeff_norm(const Poly& p) {
  double s = 0.0;
  for (const auto& [alpha, c] : p.terms()) s += std::norm(c);
  return std::sqrt(s);
}

Poly cleanup(const Poly& p, double tol) {
  const double cut = tol * max_abs_coeff(p);
  Poly out(p.nvars());
  for (const auto& [alpha, c] : p.terms())
    if (std::abs(c) > cut) out.add_term(alpha, c);
  return out;
}

CVector coeff_vector(const Poly& p, std::span<const MultiIndex> basis) {
  CVector v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) v(static_cast<Eigen::Index>(i)) = p.coeff(basis[i]);
  return v;
}

Poly from_coeff_vector(const CVector& v, std::span<const MultiIndex> basis) {
  if (static_cast<std::size_t>(v.size()) != basis.size())
    throw DimensionError("from_coeff_vector: size mismatch");
  if (basis.empty()) throw ContractError("from_coeff_vector: empty basis");
  Poly p(basis.front().size());
  for (std::size_t i = 0; i < basis.size(); ++i) p.add_term(basis[i], v(static_cast<Eigen::Index>(i)));
  return p;
}

Poly diff(const Poly& p, const MultiIndex& alpha) {
  if (alpha.size() != p.nvars()) throw DimensionError("diff: multi-index length mismatch");
  Poly out(p.nvars());
  for (const auto& [beta, c] : p.terms()) {
    if (!alpha.divides(beta)) continue;
    double f = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      for (int t = 0; t < alpha[i]; ++t) f *= static_cast<double>(beta[i] - t);
    out.add_term(beta - alpha, c * f);
  }
  return out;
}

Poly apply_diff_op(const Poly& g, const Poly& f) {
  if (g.nvars() != f.nvars()) throw DimensionError("apply_diff_op: mismatched variable counts");
  Poly out(f.nvars());
  for (const auto& [alpha, c] : g.terms()) out += diff(f, alpha) * c;
  return out;
}

cplx evaluate(const Poly& p, std::span<const cplx> point) {
  if (point.size() != p.nvars()) throw DimensionError("evaluate: point length mismatch");
  cplx sum{};
  for (const auto& [alpha, c] : p.terms()) {
    cplx m = c;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i]) m *= std::pow(point[i], alpha[i]);
    sum += m;
  }
  return sum;
}

Poly random_homogeneous(std::size_t nvars, int d, Rng& rng) {
  if (d < 0) throw ContractError("random_homogeneous: negative degree");
  std::normal_distribution<double> normal(0.0, 1.0);
  Poly p(nvars);
  for (const auto& alpha : monomials(nvars, d, true)) p.add_term(alpha, normal(rng));
  return p;
}

// ---------------------------------------------------------------------------
// LinearForm

LinearForm::LinearForm(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ContractError("LinearForm: empty coefficient vector");
  if (std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx{}; }))
    throw ContractError("LinearForm: identically zero");
}

Poly LinearForm::to_poly() const {
  Poly p(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) p.add_term(MultiIndex::unit(coeffs_.size(), i), coeffs_[i]);
  return p;
}

LinearForm LinearForm::scaled(cplx c) const {
  std::vector<cplx> v(coeffs_);
  for (auto& x : v) x *= c;
  return LinearForm(std::move(v));
}

double LinearForm::norm() const {
  double s = 0.0;
  for (cplx c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// CoordChange

CoordChange::CoordChange(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
    throw DimensionError("CoordChange: matrix must be square and nonempty");
  Eigen::FullPivLU<CMatrix> lu(matrix_);
  if (!lu.isInvertible()) throw ContractError("CoordChange: matrix is not invertible");
  inverse_ = lu.inverse();
  const auto n = matrix_.rows();
  const double err = (matrix_ * inverse_ - CMatrix::Identity(n, n)).norm();
  const double scale = matrix_.norm() * inverse_.norm();
  if (!(err <= 1e-12 * std::max(1.0, scale)))
    throw ContractError("CoordChange: matrix is too ill-conditioned to invert reliably");
}

CoordChange::CoordChange(CMatrix matrix, CMatrix inverse)
    : matrix_(std::move(matrix)), inverse_(std::move(inverse)) {}

CoordChange CoordChange::identity(std::size_t nvars) {
  const auto n = static_cast<Eigen::Index>(nvars);
  return CoordChange(CMatrix::Identity(n, n), CMatrix::Identity(n, n));
}

CoordChange CoordChange::swap(std::size_t nvars, std::size_t i, std::size_t j) {
  const auto n = static_cast<Eigen::Index>(nvars);
  CMatrix m = CMatrix::Identity(n, n);
  m.row(static_cast<Eigen::Index>(i)).swap(m.row(static_cast<Eigen::Index>(j)));
  return CoordChange(m, m);
}

CoordChange CoordChange::random_orthogonal(std::size_t nvars, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(nvars);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  // sign fix so the distribution is Haar
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  CMatrix m = q.cast<cplx>();
  CMatrix inv = m.transpose();
  return CoordChange(std::move(m), std::move(inv));
}

CoordChange CoordChange::random_gaussian(std::size_t nvars, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(nvars);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = normal(rng);
  return CoordChange(std::move(m));
}

CoordChange CoordChange::inverse() const { return CoordChange(inverse_, matrix_); }

CoordChange CoordChange::transposed() const {
  return CoordChange(matrix_.transpose(), inverse_.transpose());
}

Poly CoordChange::apply(const Poly& p, bool transpose) const {
  const std::size_t n = nvars();
  if (p.nvars() != n) throw DimensionError("change_coords: variable count mismatch");
  const CMatrix& m = matrix_;
  std::vector<Poly> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Poly y(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto kk = static_cast<Eigen::Index>(k);
      y.add_term(MultiIndex::unit(n, k), transpose ? m(kk, ii) : m(ii, kk));
    }
    images.push_back(std::move(y));
  }
  // powers[i][e] = images[i]^e, built lazily
  std::vector<std::vector<Poly>> powers(n);
  auto power_of = [&](std::size_t i, int e) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly::constant(n, 1.0));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[i]);
    return cache[static_cast<std::size_t>(e)];
  };
  Poly out(n);
  for (const auto& [alpha, c] : p.terms()) {
    Poly term = Poly::constant(n, c);
    for (std::size_t i = 0; i < n; ++i)
      if (alpha[i]) term = term * power_of(i, alpha[i]);
    out += term;
  }
  return out;
}

LinearForm CoordChange::apply(const LinearForm& l) const {
  if (l.nvars() != nvars()) throw DimensionError("CoordChange: linear form length mismatch");
  CVector xi(static_cast<Eigen::Index>(l.nvars()));
  for (std::size_t i = 0; i < l.nvars(); ++i) xi(static_cast<Eigen::Index>(i)) = l[i];
  CVector img = matrix_.transpose() * xi;
  return LinearForm(std::vector<cplx>(img.data(), img.data() + img.size()));
}

Poly change_coords(const Poly& p, const CoordChange& phi, bool transpose) {
  return phi.apply(p, transpose);
}

}  // namespace gadkit
