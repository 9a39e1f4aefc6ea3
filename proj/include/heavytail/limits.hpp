#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "heavytail/processes.hpp"
#include "heavytail/rng.hpp"
#include "heavytail/tail.hpp"

namespace heavytail {

/// Theoretical limit of the normalized eigenvalue point process: points
/// b^(2/alpha) * Gamma_i^(-2/alpha). b = 0 flags the degenerate limit.
struct LimitLaw {
  double alpha;
  double b = 1.0;

  void validate() const;
};

/// Gamma_1 < ... < Gamma_k, cumulative sums of iid unit-mean exponentials.
std::vector<double> gamma_points(std::size_t k, Rng& rng);

/// One draw of the k largest limit points, strictly decreasing.
std::vector<double> limit_topk_sample(const LimitLaw& law, std::size_t k,
                                      Rng& rng);

/// P(largest limit point <= x) = exp(-b * x^(-alpha/2)); x > 0 required.
double frechet_cdf(const LimitLaw& law, double x);

struct MonteCarloValue {
  double value;
  double std_error;  // 0 when the value is closed-form
  std::size_t draws;
};

/// b = E sigma_0^alpha for a stochastic volatility process.
/// Exp-gaussian volatility: closed form exp(alpha^2 tau_eff^2 / 2).
/// m-dependent lognormal average: closed form for m = 0, Monte Carlo with
/// reported standard error otherwise.
MonteCarloValue b_sv_analytic(const VolSpec& vol, double alpha,
                              std::size_t mc_draws, Rng& rng);

/// Normalizing sequence for a row process: analytic for iid rows, the noise
/// law's analytic sequence for SV rows (the convention under which
/// b = E sigma^alpha), and an empirical-quantile sequence calibrated from a
/// long simulated path for GARCH rows.
NormalizingSequence process_normalizer(
    const ProcessSpec& spec, const Rng& rng,
    std::size_t calibration_draws = kDefaultCalibrationDraws);

struct BEmpiricalPoint {
  double x;
  double b_hat;
  double std_error;       // binomial
  std::size_t exceedances;
};

struct BEmpiricalResult {
  std::vector<BEmpiricalPoint> points;
  double pooled;           // inverse-variance weighted mean over the grid
  double pooled_std_error;
  std::size_t reps;
  double a_np_sq;
};

/// Estimates the large-deviation constant b from
///   b_hat(x) = x^(alpha/2) * p * P(sum_t X_t^2 > a_np^2 x),
/// the exceedance probability taken over `reps` independent simulated rows.
/// A pilot run projects the exceedance counts; any grid point expected to
/// see fewer than 50 raises EstimationError with the pilot counts attached.
BEmpiricalResult b_empirical(const ProcessSpec& spec, double alpha,
                             std::size_t n, std::size_t p,
                             std::span<const double> x_grid, std::size_t reps,
                             const Rng& rng);

}  // namespace heavytail
