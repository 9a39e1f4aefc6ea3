#include "heavytail/limits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heavytail/errors.hpp"
#include "heavytail/parallel.hpp"
#include "heavytail/stats.hpp"

namespace heavytail {

void LimitLaw::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw ParameterError("LimitLaw: alpha must be in (0,2)");
  if (!(b >= 0.0)) throw ParameterError("LimitLaw: b must be >= 0");
}

std::vector<double> gamma_points(std::size_t k, Rng& rng) {
  if (k < 1) throw ParameterError("gamma_points: k must be >= 1");
  std::vector<double> points(k);
  double sum = 0.0;
  for (auto& g : points) {
    sum += rng.exponential();
    g = sum;
  }
  return points;
}

std::vector<double> limit_topk_sample(const LimitLaw& law, std::size_t k,
                                      Rng& rng) {
  law.validate();
  if (!(law.b > 0.0))
    throw DomainError(
        "limit_topk_sample: b = 0 gives the degenerate limit at zero");
  std::vector<double> points = gamma_points(k, rng);
  const double scale = std::pow(law.b, 2.0 / law.alpha);
  for (auto& x : points) x = scale * std::pow(x, -2.0 / law.alpha);
  return points;
}

double frechet_cdf(const LimitLaw& law, double x) {
  law.validate();
  if (!(x > 0.0)) throw DomainError("frechet_cdf: x must be > 0");
  if (law.b == 0.0) return 1.0;
  return std::exp(-law.b * std::pow(x, -0.5 * law.alpha));
}

MonteCarloValue b_sv_analytic(const VolSpec& vol, double alpha,
                              std::size_t mc_draws, Rng& rng) {
  validate(vol);
  if (!(alpha > 0.0)) throw ParameterError("b_sv_analytic: alpha must be > 0");
  if (const auto* eg = std::get_if<ExpGaussianVol>(&vol)) {
    // log sigma ~ N(0, tau_eff^2), so E sigma^alpha = exp(alpha^2 tau_eff^2/2).
    return {std::exp(0.5 * alpha * alpha * eg->tau_eff_sq()), 0.0, 0};
  }
  const auto& md = std::get<MDependentVol>(vol);
  if (md.m == 0) {
    // Single lognormal: E sigma^alpha = exp(alpha mu + alpha^2 tau^2 / 2).
    return {std::exp(alpha * md.mu + 0.5 * alpha * alpha * md.tau * md.tau),
            0.0, 0};
  }
  if (mc_draws < 2)
    throw ParameterError("b_sv_analytic: mc_draws must be >= 2");
  Rng stream = rng.fork("b_sv_mc");
  const double window = static_cast<double>(md.m + 1);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < mc_draws; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j <= md.m; ++j)
      s += stream.lognormal(md.mu, md.tau);
    const double v = std::pow(s / window, alpha);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / static_cast<double>(mc_draws);
  const double var =
      (sum_sq - sum * mean) / static_cast<double>(mc_draws - 1);
  return {mean, std::sqrt(std::max(var, 0.0) / static_cast<double>(mc_draws)),
          mc_draws};
}

NormalizingSequence process_normalizer(const ProcessSpec& spec, const Rng& rng,
                                       std::size_t calibration_draws) {
  spec.validate();
  if (const auto* iid = std::get_if<IidProcess>(&spec.variant))
    return NormalizingSequence::analytic(iid->law);
  if (const auto* sv = std::get_if<SvProcess>(&spec.variant))
    return NormalizingSequence::analytic(sv->z_law);
  // GARCH: calibrate the empirical quantile sequence from one long path.
  Rng stream = rng.fork("normalizer");
  std::vector<double> path = simulate_path(spec, calibration_draws, stream);
  for (auto& x : path) x = std::abs(x);
  return NormalizingSequence::empirical_from_sample(std::move(path));
}

BEmpiricalResult b_empirical(const ProcessSpec& spec, double alpha,
                             std::size_t n, std::size_t p,
                             std::span<const double> x_grid, std::size_t reps,
                             const Rng& rng) {
  spec.validate();
  if (!(alpha > 0.0 && alpha < 2.0))
    throw ParameterError("b_empirical: alpha must be in (0,2)");
  if (n < 1 || p < 1) throw ParameterError("b_empirical: n, p must be >= 1");
  if (x_grid.empty()) throw ParameterError("b_empirical: empty x grid");
  for (double x : x_grid)
    if (!(x > 0.0)) throw ParameterError("b_empirical: grid values must be > 0");
  if (reps < 2) throw ParameterError("b_empirical: reps must be >= 2");

  const double a_np = process_normalizer(spec, rng).at(n * p);
  const double a_np_sq = a_np * a_np;

  // Row r exceeds grid point x when sum_t X_t^2 > a_np^2 x. One pass of
  // simulated rows serves every grid point.
  std::vector<double> thresholds(x_grid.begin(), x_grid.end());
  std::vector<std::vector<std::uint8_t>> exceed(
      thresholds.size(), std::vector<std::uint8_t>(reps, 0));
  const auto run_rows = [&](std::size_t first, std::size_t count) {
    parallel_for(count, [&](std::size_t j) {
      const std::size_t r = first + j;
      Rng row_rng = rng.fork("b_emp_row", r);
      const std::vector<double> path = simulate_path(spec, n, row_rng);
      const double sum_sq = compensated_sum_squares(path);
      for (std::size_t g = 0; g < thresholds.size(); ++g)
        exceed[g][r] = sum_sq > a_np_sq * thresholds[g] ? 1 : 0;
    });
  };

  // Pilot: project exceedance counts to the full run before paying for it.
  const std::size_t pilot =
      std::min(reps, std::max<std::size_t>(200, reps / 10));
  run_rows(0, pilot);
  std::ostringstream pilot_note;
  bool insufficient = false;
  for (std::size_t g = 0; g < thresholds.size(); ++g) {
    std::size_t count = 0;
    for (std::size_t r = 0; r < pilot; ++r) count += exceed[g][r];
    const double projected = static_cast<double>(count) *
                             static_cast<double>(reps) /
                             static_cast<double>(pilot);
    pilot_note << (g ? ", " : "") << "x=" << thresholds[g] << ": " << count
               << "/" << pilot << " (projected " << projected << ")";
    if (projected < 50.0) insufficient = true;
  }
  if (insufficient)
    throw EstimationError(
        "b_empirical: expected exceedances below 50 for some grid point; "
        "pilot counts: " +
        pilot_note.str());
  run_rows(pilot, reps - pilot);

  BEmpiricalResult result;
  result.reps = reps;
  result.a_np_sq = a_np_sq;
  double weight_sum = 0.0;
  double weighted_value = 0.0;
  for (std::size_t g = 0; g < thresholds.size(); ++g) {
    std::size_t count = 0;
    for (std::size_t r = 0; r < reps; ++r) count += exceed[g][r];
    const double frac =
        static_cast<double>(count) / static_cast<double>(reps);
    const double factor =
        std::pow(thresholds[g], 0.5 * alpha) * static_cast<double>(p);
    const double b_hat = factor * frac;
    const double se =
        factor * std::sqrt(frac * (1.0 - frac) / static_cast<double>(reps));
    result.points.push_back({thresholds[g], b_hat, se, count});
    if (count < reps && se > 0.0) {  // saturated points carry no information
      const double w = 1.0 / (se * se);
      weight_sum += w;
      weighted_value += w * b_hat;
    }
  }
  if (weight_sum <= 0.0)
    throw EstimationError("b_empirical: every grid point saturated");
  result.pooled = weighted_value / weight_sum;
  result.pooled_std_error = std::sqrt(1.0 / weight_sum);
  return result;
}

}  // namespace heavytail
