#include "heavytail/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "heavytail/errors.hpp"
#include "heavytail/parallel.hpp"
#include "heavytail/spectra.hpp"
#include "heavytail/stats.hpp"

namespace heavytail {

std::size_t resolve_dimension(const GrowthRule& growth, std::size_t n) {
  return std::visit(
      [n](const auto& g) -> std::size_t {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, GrowthExplicit>) {
          if (g.p < 1) throw ParameterError("growth: explicit p must be >= 1");
          return g.p;
        } else {
          double exponent;
          if constexpr (std::is_same_v<T, GrowthBeta>)
            exponent = g.beta;
          else
            exponent = g.kappa;
          if (!(exponent > 0.0))
            throw ParameterError("growth: exponent must be > 0");
          const double p =
              std::round(std::pow(static_cast<double>(n), exponent));
          return static_cast<std::size_t>(std::max(1.0, p));
        }
      },
      growth);
}

GrowthValidation validate_growth(double alpha, const GrowthRule& growth) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw ParameterError("validate_growth: alpha must be in (0,2)");
  return std::visit(
      [alpha](const auto& g) -> GrowthValidation {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, GrowthBeta>) {
          if (alpha > 1.0) {
            const double bound = (2.0 - alpha) / (alpha - 1.0);
            if (!(g.beta < bound)) {
              std::ostringstream msg;
              msg << "growth exponent beta=" << g.beta
                  << " violates beta < (2-alpha)/(alpha-1) = " << bound
                  << " for alpha=" << alpha;
              return {false, msg.str()};
            }
          }
          return {true, ""};
        } else if constexpr (std::is_same_v<T, GrowthKappa>) {
          if (g.kappa < 1.0) {
            std::ostringstream msg;
            msg << "kappa=" << g.kappa
                << " is below the p >= n regime requirement kappa >= 1";
            return {false, msg.str()};
          }
          return {true, ""};
        } else {
          return {true, ""};
        }
      },
      growth);
}

double ks_distance(std::span<const double> sample,
                   const std::function<double(double)>& cdf) {
  if (sample.empty()) throw ParameterError("ks_distance: empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double upper = (static_cast<double>(i) + 1.0) / n - f;
    const double lower = f - static_cast<double>(i) / n;
    d = std::max({d, upper, lower});
  }
  return std::min(d, 1.0);
}

void ExperimentConfig::validate() const {
  process.validate();
  if (!(alpha > 0.0 && alpha < 2.0))
    throw ParameterError("ExperimentConfig: alpha must be in (0,2)");
  if (n < 1) throw ParameterError("ExperimentConfig: n must be >= 1");
  if (k < 1) throw ParameterError("ExperimentConfig: k must be >= 1");
  if (reps < 2) throw ParameterError("ExperimentConfig: reps must be >= 2");
  for (double x : x_grid)
    if (!(x > 0.0))
      throw ParameterError("ExperimentConfig: x_grid values must be > 0");
}

SummaryStats summarize(std::vector<double> values) {
  if (values.empty()) throw ParameterError("summarize: empty sample");
  SummaryStats s;
  std::vector<double> dev(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    dev[i] = std::abs(values[i] - 1.0);
  s.mad_from_one = median(std::move(dev));
  s.mean = compensated_sum(values) / static_cast<double>(values.size());
  std::sort(values.begin(), values.end());
  s.median = median_of_sorted(values);
  s.min = values.front();
  s.max = values.back();
  return s;
}

bool VerificationReport::ks_largest_ok() const {
  return ks_largest <= tol.ks_largest;
}

bool VerificationReport::ks_spacing_ok() const {
  return std::isnan(ks_uniform_spacing) ||
         ks_uniform_spacing <= tol.ks_spacing;
}

bool VerificationReport::ratio_max_entry_ok() const {
  return ratio_max_entry.median >= tol.ratio_lo &&
         ratio_max_entry.median <= tol.ratio_hi;
}

bool VerificationReport::passed() const {
  if (checks.ks_largest && !ks_largest_ok()) return false;
  if (checks.ks_spacing && !ks_spacing_ok()) return false;
  if (checks.ratio_max_entry && !ratio_max_entry_ok()) return false;
  return true;
}

std::vector<RepRecord> run_replications(const ExperimentConfig& cfg,
                                        std::size_t p) {
  const Rng master(cfg.seed);
  const std::size_t k = std::min(cfg.k, std::min(p, cfg.n));
  std::vector<RepRecord> records(cfg.reps);
  parallel_for(cfg.reps, [&](std::size_t r) {
    const Rng rep_rng = master.fork("rep", r);
    const ObservationMatrix m = build_matrix(cfg.process, p, cfg.n, rep_rng);
    const SpectrumResult spectrum = top_eigenvalues(m, k);
    RepRecord& rec = records[r];
    rec.lambdas = spectrum.eigenvalues;
    const std::vector<double> sums = row_sums_of_squares(m);
    rec.max_row_sum = *std::max_element(sums.begin(), sums.end());
    double max_sq = 0.0;
    for (double x : m.entries) max_sq = std::max(max_sq, x * x);
    rec.max_entry_sq = max_sq;
  });
  return records;
}

MonteCarloValue resolve_b(const ExperimentConfig& cfg, std::size_t p) {
  const Rng master(cfg.seed);
  if (std::holds_alternative<IidProcess>(cfg.process.variant))
    return {1.0, 0.0, 0};
  if (const auto* sv = std::get_if<SvProcess>(&cfg.process.variant)) {
    Rng rng = master.fork("b_sv");
    return b_sv_analytic(sv->vol, cfg.alpha, kDefaultCalibrationDraws, rng);
  }
  const Rng rng = master.fork("b_emp");
  const BEmpiricalResult est = b_empirical(cfg.process, cfg.alpha, cfg.n, p,
                                           cfg.x_grid, cfg.b_reps, rng);
  return {est.pooled, est.pooled_std_error, est.reps};
}

VerificationReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.reps < 30)
    throw ParameterError(
        "run_experiment: reps below the KS minimum of 30");
  const std::size_t p = resolve_dimension(cfg.growth, cfg.n);

  VerificationReport report;
  report.tol = cfg.tol;
  report.checks = cfg.checks;
  report.p = p;

  const GrowthValidation growth_check = validate_growth(cfg.alpha, cfg.growth);
  if (!growth_check.ok) report.warnings.push_back(growth_check.warning);

  const Rng master(cfg.seed);
  const Rng norm_rng = master.fork("normalizer_parent");
  const double a_np =
      process_normalizer(cfg.process, norm_rng, cfg.calibration_draws)
          .at(cfg.n * p);
  report.normalizer_sq = a_np * a_np;

  const MonteCarloValue b = resolve_b(cfg, p);
  report.b_used = b.value;
  report.b_used_std_error = b.std_error;
  if (!(b.value > 0.0))
    report.warnings.push_back("estimated b is zero; degenerate limit");

  const std::vector<RepRecord> records = run_replications(cfg, p);

  std::vector<double> largest(records.size());
  std::vector<double> ratio_diag(records.size());
  std::vector<double> ratio_entry(records.size());
  std::vector<double> spacing;
  const bool have_spacing = std::min(cfg.k, std::min(p, cfg.n)) >= 2;
  if (have_spacing) spacing.resize(records.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    const RepRecord& rec = records[r];
    largest[r] = rec.lambdas[0] / report.normalizer_sq;
    ratio_diag[r] = rec.lambdas[0] / rec.max_row_sum;
    ratio_entry[r] = rec.lambdas[0] / rec.max_entry_sq;
    if (have_spacing)
      spacing[r] = std::pow(rec.lambdas[1] / rec.lambdas[0], 0.5 * cfg.alpha);
  }

  const LimitLaw law{cfg.alpha, report.b_used};
  report.ks_largest =
      ks_distance(largest, [&](double x) { return frechet_cdf(law, x); });
  report.ks_uniform_spacing =
      have_spacing
          ? ks_distance(spacing,
                        [](double x) {
                          return std::clamp(x, 0.0, 1.0);
                        })
          : std::numeric_limits<double>::quiet_NaN();

  std::vector<double> sorted_largest = largest;
  std::sort(sorted_largest.begin(), sorted_largest.end());
  report.ecdf_points.reserve(sorted_largest.size());
  for (std::size_t i = 0; i < sorted_largest.size(); ++i)
    report.ecdf_points.emplace_back(
        sorted_largest[i],
        (static_cast<double>(i) + 1.0) /
            static_cast<double>(sorted_largest.size()));

  report.ratio_max_diag = summarize(std::move(ratio_diag));
  report.ratio_max_entry = summarize(std::move(ratio_entry));
  return report;
}

}  // namespace heavytail
