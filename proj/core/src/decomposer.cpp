#include "gadkit/decomposer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace gadkit {

namespace {

std::vector<double> normals(std::size_t n, Rng& rng) {
  std::normal_distribution<double> dist;
  std::vector<double> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

CMatrix combine(const std::vector<CMatrix>& mats, const std::vector<double>& lambda) {
  CMatrix out = CMatrix::Zero(mats.front().rows(), mats.front().cols());
  for (std::size_t j = 0; j < mats.size(); ++j) out += lambda[j] * mats[j];
  return out;
}

struct Probe {
  CMatrix combo;
  CMatrix t;
  CMatrix q;
  std::vector<int> labels;
};

Probe factor_probe(const MultOps& ops, Rng& rng, const ClusterOptions& opts) {
  Probe p;
  p.combo = combine(ops.mats, normals(ops.mats.size(), rng));
  Eigen::ComplexSchur<CMatrix> schur(p.combo);
  if (schur.info() != Eigen::Success) throw ClusteringError("complex Schur factorization failed");
  p.t = schur.matrixT();
  p.q = schur.matrixU();
  std::vector<cplx> eig(static_cast<std::size_t>(p.t.rows()));
  for (Eigen::Index i = 0; i < p.t.rows(); ++i) eig[static_cast<std::size_t>(i)] = p.t(i, i);
  p.labels = cluster_eigs(eig, opts.forced_clusters, opts.cluster_tol);
  return p;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

double relative_commutator(const std::vector<CMatrix>& mats) {
  double worst = 0.0;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    for (std::size_t j = i + 1; j < mats.size(); ++j) {
      const double scale = mats[i].norm() * mats[j].norm();
      if (scale == 0.0) continue;
      const double c = (mats[i] * mats[j] - mats[j] * mats[i]).norm() / scale;
      worst = std::max(worst, c);
    }
  }
  return worst;
}

struct Localized {
  CoordChange phi = CoordChange::identity(1);
  MultOps ops;
};

// Best of options.coord_trials random coordinate changes per round: a higher
// numerical rank wins, then the better conditioned localization.
Localized localize(const Poly& f, int d, const DecomposeOptions& options, Rng& rng, int& attempts) {
  const std::size_t n1 = f.nvars();
  const int cap = std::max(1, options.retry_cap);
  const int trials = std::max(1, options.coord_trials);
  std::optional<Localized> best;
  std::optional<LocalizationError> last;
  for (int round = 0; round < cap && !best; ++round) {
    for (int t = 0; t < trials; ++t) {
      ++attempts;
      CoordChange trial = CoordChange::random_orthogonal(n1, rng);
      const DualSeries fs = check_f(trial.apply(f));
      try {
        MultOps cand = mult_matrices(fs, d, options.split, rng, options.svd_tol, options.forced_rank);
        if (!best || cand.rank > best->ops.rank ||
            (cand.rank == best->ops.rank && cand.cond_n0 < best->ops.cond_n0))
          best = Localized{std::move(trial), std::move(cand)};
      } catch (const LocalizationError& e) {
        last = e;
      } catch (const NumericalError& e) {
        throw LocalizationError(e.what());
      }
    }
  }
  if (!best)
    throw LocalizationError(std::string(last->what()) + " after " + std::to_string(attempts) +
                                " coordinate changes",
                            last->trace());
  return std::move(*best);
}

}  // namespace

MultOps mult_matrices(const DualSeries& fs, int d, std::optional<int> split, Rng& rng,
                      double svd_tol, std::optional<int> forced_rank) {
  const HankelFamily fam = hankel_family(fs, d, split);
  MultOps ops;
  ops.basis = probe_and_rank(fam, rng, svd_tol, forced_rank);
  ops.rank = ops.basis.rank;
  const CMatrix& u = ops.basis.left;
  const CMatrix& v = ops.basis.right;

  const CMatrix n0 = u.adjoint() * fam.h0() * v;
  Eigen::JacobiSVD<CMatrix> svd(n0);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  ops.cond_n0 = smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
  if (!(ops.cond_n0 <= 1.0 / svd_tol)) {
    PipelineTrace trace;
    trace.rank = ops.rank;
    trace.singular_values = ops.basis.singular_values;
    throw LocalizationError("localized block N0 is singular (cond " + std::to_string(ops.cond_n0) + ")",
                            std::move(trace));
  }
  const Eigen::PartialPivLU<CMatrix> lu(n0);
  for (std::size_t j = 1; j < fam.matrices.size(); ++j)
    ops.mats.push_back(lu.solve(u.adjoint() * fam.matrices[j] * v));
  ops.commutator = relative_commutator(ops.mats);
  return ops;
}

LocalBlockSet multiplicities(const MultOps& ops, Rng& rng, const ClusterOptions& opts) {
  if (ops.mats.empty()) throw ContractError("multiplicities: no multiplication matrices");
  const int cap = std::max(1, opts.retry_cap);
  Probe first;
  int attempt = 0;
  bool stable = false;
  std::vector<int> sizes_a;
  std::vector<int> sizes_b;
  while (attempt < cap && !stable) {
    ++attempt;
    first = factor_probe(ops, rng, opts);
    const Probe second = factor_probe(ops, rng, opts);
    sizes_a = sorted(cluster_sizes(first.labels));
    sizes_b = sorted(cluster_sizes(second.labels));
    stable = sizes_a == sizes_b;
  }
  if (!stable) {
    PipelineTrace trace;
    trace.rank = ops.rank;
    trace.singular_values = ops.basis.singular_values;
    trace.multiplicities = cluster_sizes(first.labels);
    throw ClusteringError("eigenvalue clusters differ between probes after " +
                              std::to_string(attempt) + " attempts",
                          std::move(trace));
  }

  LocalBlockSet out;
  out.attempts = attempt;
  out.probe = first.combo;
  out.t = first.t;
  out.q = first.q;
  std::vector<int> labels = first.labels;
  reorder_schur(out.t, out.q, labels);
  out.multiplicities = cluster_sizes(labels);

  std::vector<CMatrix> rotated;
  rotated.reserve(ops.mats.size());
  for (const auto& m : ops.mats) rotated.push_back(out.q.adjoint() * m * out.q);

  Eigen::Index start = 0;
  for (int mu : out.multiplicities) {
    std::vector<CMatrix> blocks;
    std::vector<cplx> point;
    for (const auto& r : rotated) {
      blocks.push_back(r.block(start, start, mu, mu));
      point.push_back(blocks.back().trace() / static_cast<double>(mu));
    }
    out.blocks.push_back(std::move(blocks));
    out.points.push_back(std::move(point));
    start += mu;
  }
  return out;
}

int nil_index(const std::vector<CMatrix>& blocks, std::span<const cplx> point, Rng& rng,
              double nil_tol) {
  if (blocks.empty() || blocks.size() != point.size())
    throw DimensionError("nil_index: blocks and point differ in length");
  const Eigen::Index mu = blocks.front().rows();
  const std::vector<double> lambda = normals(blocks.size(), rng);
  CMatrix n = CMatrix::Zero(mu, mu);
  CMatrix raw = CMatrix::Zero(mu, mu);
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    raw += lambda[j] * blocks[j];
    n += lambda[j] * (blocks[j] - point[j] * CMatrix::Identity(mu, mu));
  }
  if (n.norm() <= nil_tol * std::max(1.0, raw.norm())) return 1;

  // staircase: deflate the numerical kernel until nothing is left. Each step
  // is the induced operator on the quotient by the kernel, so the number of
  // steps is the nilpotency index.
  const double top = n.norm();
  CMatrix y = n;
  for (int steps = 1; steps <= mu; ++steps) {
    Eigen::JacobiSVD<CMatrix> svd(y, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (s(0) <= nil_tol * top) return steps;
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > nil_tol * s(0)) ++r;
    if (r == y.rows()) break;
    const CMatrix v = svd.matrixV().leftCols(r);
    y = v.adjoint() * y * v;
  }
  throw ClusteringError("local block of size " + std::to_string(mu) + " is not nilpotent");
}

WeightSolution solve_weights(const Poly& f, const std::vector<LinearForm>& supports,
                             const std::vector<int>& degrees) {
  if (supports.size() != degrees.size())
    throw DimensionError("solve_weights: supports and degrees differ in length");
  const auto d = f.homogeneous_degree();
  if (!d) throw ContractError("solve_weights: f must be homogeneous");
  const std::size_t n1 = f.nvars();
  const auto rows = monomials(n1, *d, true);

  std::vector<std::vector<MultiIndex>> unknowns;
  std::vector<CVector> columns;
  for (std::size_t i = 0; i < supports.size(); ++i) {
    const int k = degrees[i];
    if (k < 0 || k > *d) throw ContractError("solve_weights: degree outside [0, d]");
    if (supports[i].nvars() != n1) throw DimensionError("solve_weights: support length mismatch");
    const Poly power = pow(supports[i].to_poly(), *d - k);
    unknowns.push_back(monomials(n1, k, true));
    for (const auto& m : unknowns.back()) {
      columns.push_back(coeff_vector(power * Poly::monomial(m), rows));
      if (columns.back().norm() == 0.0)
        throw NumericalError("solve_weights: zero column in the system matrix");
    }
  }

  WeightSolution out;
  const CVector b = coeff_vector(f, rows);
  if (columns.empty()) {
    out.residual = b.norm();
    return out;
  }
  CMatrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) a.col(static_cast<Eigen::Index>(c)) = columns[c];
  const CVector x = a.completeOrthogonalDecomposition().solve(b);
  out.residual = (a * x - b).norm();

  Eigen::Index at = 0;
  for (const auto& basis : unknowns) {
    const auto len = static_cast<Eigen::Index>(basis.size());
    out.omegas.push_back(from_coeff_vector(x.segment(at, len), basis));
    at += len;
  }
  return out;
}

int polish_gad(const Poly& f, GAD& g, int max_steps) {
  const std::size_t n1 = f.nvars();
  const auto rows = monomials(n1, g.d, true);
  const CVector target = coeff_vector(f, rows);
  auto residual = [&](const GAD& h) { return (target - coeff_vector(reconstruct(h), rows)).norm(); };

  double best = residual(g);
  int kept = 0;
  for (int step = 0; step < max_steps && best > 0.0; ++step) {
    std::vector<CVector> cols;
    for (const auto& t : g.terms) {
      const int m = g.d - t.k;
      const Poly l = t.ell.to_poly();
      const Poly power = pow(l, m);
      for (const auto& a : monomials(n1, t.k, true)) cols.push_back(coeff_vector(power * Poly::monomial(a), rows));
      const Poly dpow = m > 0 ? t.omega * pow(l, m - 1) * cplx(m) : Poly(n1);
      for (std::size_t j = 0; j < n1; ++j) cols.push_back(coeff_vector(dpow * Poly::variable(n1, j), rows));
    }
    CMatrix jac(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) jac.col(static_cast<Eigen::Index>(c)) = cols[c];
    const CVector r = target - coeff_vector(reconstruct(g), rows);
    const CVector dx = jac.completeOrthogonalDecomposition().solve(r);

    GAD next = g;
    Eigen::Index at = 0;
    for (auto& t : next.terms) {
      const auto basis = monomials(n1, t.k, true);
      const auto len = static_cast<Eigen::Index>(basis.size());
      t.omega += from_coeff_vector(dx.segment(at, len), basis);
      at += len;
      std::vector<cplx> l(t.ell.coeffs().begin(), t.ell.coeffs().end());
      for (std::size_t j = 0; j < n1; ++j) l[j] += dx(at + static_cast<Eigen::Index>(j));
      at += static_cast<Eigen::Index>(n1);
      t.ell = LinearForm(std::move(l));
    }
    const double res = residual(next);
    if (!(res < best)) break;
    g = std::move(next);
    ++kept;
    const bool slow = res > 0.5 * best;
    best = res;
    if (slow) break;
  }
  return kept;
}

DecompositionReport gad_decompose(const Poly& f, const DecomposeOptions& options) {
  if (f.is_zero()) throw ContractError("gad_decompose: f is zero");
  const auto deg = f.homogeneous_degree();
  if (!deg) throw ContractError("gad_decompose: f is not homogeneous");
  if (f.nvars() < 2) throw ContractError("gad_decompose: need at least two variables");
  const int d = *deg;
  if (d < 1) throw ContractError("gad_decompose: degree must be at least 1");
  const auto n1 = f.nvars();
  const int n = static_cast<int>(n1) - 1;

  DecompositionReport report;
  report.options = options;
  report.gad.n = n;
  report.gad.d = d;

  if (d == 1) {
    std::vector<cplx> l(n1);
    for (std::size_t i = 0; i < n1; ++i) l[i] = f.coeff(MultiIndex::unit(n1, i));
    report.gad.terms.push_back({Poly::constant(n1, 1.0), LinearForm(std::move(l)), 0});
    report.rank = 1;
    report.multiplicities = {1};
    report.nil_indices = {1};
    report.degrees = {0};
    report.coord_change = CMatrix::Identity(static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n1));
    report.diagnostics.singular_values = Eigen::VectorXd::Ones(1);
    report.diagnostics.effective_nil_tol = options.nil_tol;
    report.diagnostics.localization_attempts = 1;
    report.diagnostics.clustering_attempts = 1;
    return report;
  }

  Rng rng(options.seed);
  const int cap = std::max(1, options.retry_cap);
  ClusterOptions copts;
  copts.cluster_tol = options.cluster_tol;
  copts.forced_clusters = options.forced_clusters;
  copts.retry_cap = options.retry_cap;

  int attempts = 0;
  Localized loc;
  LocalBlockSet local;
  PipelineTrace trace;
  double eff_nil = options.nil_tol;
  // a clustering failure is retried in fresh coordinates
  for (int round = 1;; ++round) {
    loc = localize(f, d, options, rng, attempts);
    const MultOps& ops = loc.ops;
    try {
      local = multiplicities(ops, rng, copts);
      trace = PipelineTrace{};
      trace.rank = ops.rank;
      trace.multiplicities = local.multiplicities;
      trace.points = local.points;
      for (const auto& point : local.points) {
        std::vector<cplx> l(n1);
        l[0] = 1.0;
        std::copy(point.begin(), point.end(), l.begin() + 1);
        trace.supports.push_back(loc.phi.inverse().apply(LinearForm(std::move(l))));
      }
      trace.singular_values = ops.basis.singular_values;
      eff_nil = std::max(options.nil_tol, std::sqrt(ops.basis.tail_ratio()));
      for (std::size_t i = 0; i < local.blocks.size(); ++i) {
        try {
          local.nil_indices.push_back(nil_index(local.blocks[i], local.points[i], rng, eff_nil));
        } catch (const ClusteringError& e) {
          throw ClusteringError(e.what(), trace);
        }
        trace.nil_indices = local.nil_indices;
      }
      break;
    } catch (const ClusteringError&) {
      if (round >= cap) throw;
    }
  }
  const MultOps& ops = loc.ops;
  const CoordChange& phi = loc.phi;

  std::vector<int> degrees;
  for (std::size_t i = 0; i < local.nil_indices.size(); ++i) {
    const int k = local.nil_indices[i] - 1;
    if (k > d)
      throw DegreeBoundError("cluster " + std::to_string(i) + " has nil-index " +
                                 std::to_string(local.nil_indices[i]) + " > d + 1 = " +
                                 std::to_string(d + 1),
                             trace);
    degrees.push_back(k);
  }

  const CoordChange back = phi.inverse();
  std::vector<LinearForm> supports;
  for (const auto& point : local.points) {
    std::vector<cplx> l(n1);
    l[0] = 1.0;
    std::copy(point.begin(), point.end(), l.begin() + 1);
    supports.push_back(back.apply(LinearForm(std::move(l))));
  }

  const WeightSolution weights = solve_weights(f, supports, degrees);
  for (std::size_t i = 0; i < supports.size(); ++i)
    report.gad.terms.push_back({weights.omegas[i], supports[i], degrees[i]});
  const int polished = options.polish_steps > 0 ? polish_gad(f, report.gad, options.polish_steps) : 0;
  if (options.normalize_supports) {
    for (auto& t : report.gad.terms) {
      const double s = t.ell.norm();
      t.ell = t.ell.scaled(1.0 / s);
      t.omega *= std::pow(cplx(s), d - t.k);
    }
  }

  const Poly t = reconstruct(report.gad);
  const Poly diffp = f - t;
  report.rank = ops.rank;
  report.multiplicities = local.multiplicities;
  report.nil_indices = local.nil_indices;
  report.degrees = degrees;
  report.reconstruction_error = coeff_norm(diffp);
  report.relative_apolar_error = apolar_norm(diffp) / apolar_norm(f);
  report.coord_change = phi.matrix();

  auto& diag = report.diagnostics;
  diag.singular_values = ops.basis.singular_values;
  diag.lsq_residual = weights.residual;
  diag.polish_steps = polished;
  diag.commutator = ops.commutator;
  diag.cond_n0 = ops.cond_n0;
  diag.effective_nil_tol = eff_nil;
  diag.localization_attempts = attempts;
  diag.clustering_attempts = local.attempts;
  diag.warnings = gad_warnings(report.gad);
  if (ops.commutator > options.comm_tol)
    diag.warnings.push_back("multiplication matrices commute only to " +
                            std::to_string(ops.commutator));
  return report;
}

}  // namespace gadkit
