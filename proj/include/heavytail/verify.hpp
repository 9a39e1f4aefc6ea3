#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "heavytail/limits.hpp"
#include "heavytail/processes.hpp"

namespace heavytail {

struct GrowthBeta {
  double beta;
};
struct GrowthKappa {
  double kappa;
};
struct GrowthExplicit {
  std::size_t p;
};
using GrowthRule = std::variant<GrowthBeta, GrowthKappa, GrowthExplicit>;

/// Dimension p for sample size n: round(n^beta), round(n^kappa), or the
/// explicit value, floored at 1.
std::size_t resolve_dimension(const GrowthRule& growth, std::size_t n);

struct GrowthValidation {
  bool ok;
  std::string warning;  // empty when ok
};

/// Checks the regime hypothesis: beta < (2-alpha)/(alpha-1) when
/// 1 < alpha < 2, kappa >= 1 for the p >= n regime. A violation is a
/// warning, never a hard error; the conditions are sufficient, not
/// necessary.
GrowthValidation validate_growth(double alpha, const GrowthRule& growth);

/// Two-sided empirical KS distance between a sample and a CDF.
double ks_distance(std::span<const double> sample,
                   const std::function<double(double)>& cdf);

/// Desk-scale tolerances; the limits are rate-free, so these are harness
/// constants, echoed in every report.
struct Tolerances {
  double ks_largest = 0.08;
  double ks_spacing = 0.08;
  double ratio_lo = 0.8;
  double ratio_hi = 1.2;
};

struct Checks {
  bool ks_largest = true;
  bool ks_spacing = true;
  bool ratio_max_entry = false;  // the p >= n diagnostic
};

struct ExperimentConfig {
  ProcessSpec process;
  double alpha = 1.0;
  std::size_t n = 100;
  GrowthRule growth = GrowthExplicit{100};
  std::size_t k = 1;
  std::size_t reps = 100;
  std::uint64_t seed = 0;
  std::vector<double> x_grid = {0.5, 1.0, 2.0, 4.0};
  std::size_t b_reps = 5000;  // rows for the GARCH b estimate
  std::size_t calibration_draws = kDefaultCalibrationDraws;
  Tolerances tol;
  Checks checks;

  void validate() const;  // reps >= 2, k >= 1, alpha in (0,2)
};

struct SummaryStats {
  double median = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double mad_from_one = 0.0;  // median |x - 1|
};

SummaryStats summarize(std::vector<double> values);

struct VerificationReport {
  double ks_largest = 0.0;
  double ks_uniform_spacing = 0.0;  // NaN when k < 2
  std::vector<std::pair<double, double>> ecdf_points;  // (x, F_hat(x))
  SummaryStats ratio_max_diag;      // lambda_1 / max row sum of squares
  SummaryStats ratio_max_entry;     // lambda_1 / max X_it^2
  double b_used = 1.0;
  double b_used_std_error = 0.0;
  double normalizer_sq = 1.0;       // a_np^2
  std::size_t p = 0;
  std::vector<std::string> warnings;
  Tolerances tol;
  Checks checks;

  bool ks_largest_ok() const;
  bool ks_spacing_ok() const;
  bool ratio_max_entry_ok() const;
  bool passed() const;  // every enabled check within tolerance
};

/// One replication's spectrum data.
struct RepRecord {
  std::vector<double> lambdas;  // top k, unnormalized, nonincreasing
  double max_row_sum = 0.0;
  double max_entry_sq = 0.0;
};

/// The per-rep loop shared by the verify and eigen commands. Deterministic
/// given the config seed, regardless of thread count.
std::vector<RepRecord> run_replications(const ExperimentConfig& cfg,
                                        std::size_t p);

/// Builds matrices across reps, normalizes the top eigenvalues by a_np^2,
/// and tests them against the Frechet / uniform-spacing limits.
VerificationReport run_experiment(const ExperimentConfig& cfg);

/// b and its standard error for the config's process kind: 1 for iid rows,
/// E sigma^alpha for SV rows, the pooled empirical estimate for GARCH rows.
MonteCarloValue resolve_b(const ExperimentConfig& cfg, std::size_t p);

}  // namespace heavytail
