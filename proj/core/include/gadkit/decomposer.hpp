#pragma once

// Recovery of a generalized additive decomposition from a form via truncated
// Hankel matrices, multiplication operators in the quotient algebra, a
// reordered complex Schur factorization and nilpotency indices of the local
// blocks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gadkit/apolarity.hpp"
#include "gadkit/invsystems.hpp"
#include "gadkit/polycore.hpp"

namespace gadkit {

enum class FailureKind : int {
  kDegreeBound = 1,
  kLocalization = 2,
  kClustering = 3,
};

/// What the pipeline had established before it stopped.
struct PipelineTrace {
  int rank = 0;
  std::vector<int> multiplicities;
  std::vector<int> nil_indices;
  std::vector<std::vector<cplx>> points;
  /// x0 + (xi, x) for each point, in the caller's coordinates.
  std::vector<LinearForm> supports;
  Eigen::VectorXd singular_values;
};

class DecompositionError : public std::runtime_error {
 public:
  DecompositionError(FailureKind kind, const std::string& what, PipelineTrace trace = {})
      : std::runtime_error(what), kind_(kind), trace_(std::move(trace)) {}

  FailureKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }
  const PipelineTrace& trace() const noexcept { return trace_; }

 private:
  FailureKind kind_;
  PipelineTrace trace_;
};

/// A nil-index exceeds the degree of the form.
class DegreeBoundError : public DecompositionError {
 public:
  DegreeBoundError(const std::string& what, PipelineTrace trace)
      : DecompositionError(FailureKind::kDegreeBound, what, std::move(trace)) {}
};

/// The localized Hankel block is singular in the current coordinates.
class LocalizationError : public DecompositionError {
 public:
  explicit LocalizationError(const std::string& what, PipelineTrace trace = {})
      : DecompositionError(FailureKind::kLocalization, what, std::move(trace)) {}
};

/// Eigenvalue clusters are unstable across probes, or a local block is not nilpotent.
class ClusteringError : public DecompositionError {
 public:
  explicit ClusteringError(const std::string& what, PipelineTrace trace = {})
      : DecompositionError(FailureKind::kClustering, what, std::move(trace)) {}
};

struct ClusterOptions {
  /// Base merge threshold relative to the eigenvalue scale; see cluster_eigs.
  double cluster_tol = 1e-4;
  std::optional<int> forced_clusters;
  int retry_cap = 5;
};

struct DecomposeOptions {
  double svd_tol = 1e-8;
  double cluster_tol = 1e-4;
  double nil_tol = 1e-6;
  double comm_tol = 1e-6;
  int retry_cap = 5;
  std::optional<int> forced_rank;
  std::optional<int> forced_clusters;
  std::optional<int> split;
  /// Random coordinate changes tried per round; the best conditioned is kept.
  int coord_trials = 3;
  bool normalize_supports = false;
  /// Cap on polish_gad steps after the weights are solved; 0 keeps the raw solve.
  int polish_steps = 3;
  std::uint64_t seed = 0;
};

/// Multiplication-by-x_j operators on the quotient algebra.
struct MultOps {
  int rank = 0;
  std::vector<CMatrix> mats;  // M_1 .. M_n
  QuotientBasis basis;
  double cond_n0 = 0.0;
  /// max_{i<j} ||[M_i, M_j]|| / (||M_i|| ||M_j||)
  double commutator = 0.0;
};

MultOps mult_matrices(const DualSeries& fs, int d, std::optional<int> split, Rng& rng,
                      double svd_tol = 1e-8, std::optional<int> forced_rank = std::nullopt);

/// Single-linkage agglomerative clustering of points in the complex plane.
///
/// With forced_clusters the dendrogram is cut to exactly that many groups
/// (ties in linkage distance merge the lexicographically first pair). Without
/// it, the dendrogram is cut at the coarsest level where every group of size
/// m has linkage height at most S * cluster_tol^(2/m), S being the larger of
/// the eigenvalue modulus and the spread. A defective eigenvalue of
/// multiplicity m is only determined to about the m-th root of the
/// perturbation, so tight groups of m values spread like eps^(1/m).
///
/// Returns a label per value, labels numbered in order of first appearance.
std::vector<int> cluster_eigs(const std::vector<cplx>& values, std::optional<int> forced_clusters,
                              double cluster_tol = 1e-4);

/// Sizes of each label, indexed by label.
std::vector<int> cluster_sizes(const std::vector<int>& labels);

/// Reorders an upper-triangular Schur form T = Q^* A Q by unitary swaps of
/// adjacent diagonal entries so that equal labels become contiguous, in
/// increasing label order. labels is permuted along with the diagonal.
void reorder_schur(CMatrix& t, CMatrix& q, std::vector<int>& labels);

struct LocalBlockSet {
  std::vector<int> multiplicities;
  std::vector<std::vector<CMatrix>> blocks;  // blocks[i][j]: variable j+1 on cluster i
  std::vector<std::vector<cplx>> points;     // affine coordinates per cluster
  std::vector<int> nil_indices;              // filled by the caller
  CMatrix q;                                 // ordered Schur basis
  CMatrix t;                                 // reordered triangular factor of the probe
  CMatrix probe;                             // the combination that was factorized
  int attempts = 0;
};

LocalBlockSet multiplicities(const MultOps& ops, Rng& rng, const ClusterOptions& opts);

/// Nilpotency index of N = sum_j lambda_j (M_j - xi_j I) over the local blocks.
/// Returns 1 when ||N|| <= nil_tol * ||sum_j lambda_j M_j||; otherwise counts
/// kernel deflations of N until the remainder is below nil_tol * ||N||, ranks
/// taken relative to the largest singular value at each step.
int nil_index(const std::vector<CMatrix>& blocks, std::span<const cplx> point, Rng& rng,
              double nil_tol = 1e-6);

struct WeightSolution {
  std::vector<Poly> omegas;
  double residual = 0.0;  // Euclidean norm of the coefficient residual
};

/// Least-squares omega_i of degree k_i with f ~ sum omega_i l_i^{d-k_i}.
WeightSolution solve_weights(const Poly& f, const std::vector<LinearForm>& supports,
                             const std::vector<int>& degrees);

/// Gauss-Newton steps on every coefficient of the omega_i and l_i of g towards f,
/// with minimum-norm updates. A step is kept only if it lowers the Euclidean
/// coefficient residual; stops early once a step gains less than a factor 2.
/// Returns the number of steps kept.
int polish_gad(const Poly& f, GAD& g, int max_steps = 3);

struct Diagnostics {
  Eigen::VectorXd singular_values;
  double lsq_residual = 0.0;
  int polish_steps = 0;
  double commutator = 0.0;
  double cond_n0 = 0.0;
  double effective_nil_tol = 0.0;
  int localization_attempts = 0;
  int clustering_attempts = 0;
  std::vector<std::string> warnings;
};

struct DecompositionReport {
  GAD gad;
  int rank = 0;
  std::vector<int> multiplicities;
  std::vector<int> nil_indices;
  std::vector<int> degrees;
  double reconstruction_error = 0.0;    // Euclidean, on coefficients
  double relative_apolar_error = 0.0;   // ||f - T||_a / ||f||_a
  CMatrix coord_change;
  Diagnostics diagnostics;
  DecomposeOptions options;
};

DecompositionReport gad_decompose(const Poly& f, const DecomposeOptions& options = {});

}  // namespace gadkit
