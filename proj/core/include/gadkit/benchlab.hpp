#pragma once

// Random GAD generators and perturbation sweeps measuring the relative apolar
// reconstruction error of gad_decompose.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gadkit/decomposer.hpp"
#include "gadkit/invsystems.hpp"

namespace gadkit {

inline constexpr std::uint64_t kDefaultSeed = 0x6a64'6b69'7400'0001ULL;

/// 10^e for e = min_exp, min_exp + step, ..., max_exp (inclusive up to rounding).
std::vector<double> eps_grid(double min_exp = -14.0, double max_exp = 0.0, double step = 0.5);

struct BenchConfig {
  int n = 9;
  int d = 3;
  std::vector<int> ks{0, 0, 0, 0, 0};
  std::vector<double> eps = eps_grid();
  int trials = 10;
  std::uint64_t seed = kDefaultSeed;
  int bases = 1;
  /// Let the decomposer detect rank and cluster count instead of feeding them.
  bool auto_mode = false;
  int threads = 1;
  DecomposeOptions decomposer;
};

/// Throws ContractError unless eps is strictly increasing and nonnegative,
/// trials >= 1, bases >= 1, n >= 1, ks nonempty with 0 <= k_i <= d.
void validate(const BenchConfig& cfg);

struct BenchRow {
  double eps = 0.0;
  double median = 0.0;  // NaN when every trial failed
  double min = 0.0;
  double max = 0.0;
  int failures = 0;
};

/// omega_i random of degree k_i, l_i = x0 + sum_j xi_ij x_j with standard
/// normal xi; supports are redrawn while two of them are closer than 0.1 as
/// points of projective space.
GAD random_gad(int n, int d, const std::vector<int>& ks, Rng& rng);

/// f0 + eps R with R random of unit apolar norm. eps = 0 returns f0.
Poly perturb(const Poly& f0, double eps, Rng& rng);

/// Engine for (master seed, base, level, trial).
Rng trial_rng(std::uint64_t master, std::uint64_t base, std::uint64_t level, std::uint64_t trial);

std::vector<BenchRow> sweep(const BenchConfig& cfg);

/// Header `eps,median,min,max,failures`, values in %.16e.
std::string rows_to_csv(const std::vector<BenchRow>& rows);

/// Log-log plot of the median, min and max curves.
std::string rows_to_svg(const std::vector<BenchRow>& rows, const std::string& title);

/// Writes the CSV and, when svg_path is set, the plot. Throws std::runtime_error on I/O failure.
void emit(const std::vector<BenchRow>& rows, const std::string& csv_path,
          const std::optional<std::string>& svg_path = std::nullopt,
          const std::string& title = "relative reconstruction error");

/// Least-squares slope of log10(median) against log10(eps) over rows with
/// lo <= eps <= hi and a finite positive median.
double loglog_slope(const std::vector<BenchRow>& rows, double lo, double hi);

}  // namespace gadkit
