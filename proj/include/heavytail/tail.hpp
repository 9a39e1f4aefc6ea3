#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "heavytail/rng.hpp"

namespace heavytail {

/// A two-sided Pareto-tailed law with index alpha in (0,2):
///   P(X >  x) =     q * (x/scale)^(-alpha)   for x >= scale,
///   P(X < -x) = (1-q) * (x/scale)^(-alpha)   for x >= scale.
/// Sign and magnitude are drawn independently.
struct TailLaw {
  double alpha;
  double q = 1.0;
  double scale = 1.0;

  void validate() const;
};

double sample_tail_one(const TailLaw& law, Rng& rng);
std::vector<double> sample_tail(const TailLaw& law, std::size_t count,
                                Rng& rng);

inline constexpr std::size_t kDefaultCalibrationDraws = 1'000'000;

/// The sequence a_m solving m * P(|X| > a_m) = 1.
///
/// Analytic mode is exact for the Pareto family: a_m = scale * m^(1/alpha).
/// Empirical-quantile mode returns the type-7 (1 - 1/m)-quantile of |X| from
/// a calibration sample, either drawn from a TailLaw or supplied directly
/// (used for processes whose marginal law has no closed form).
class NormalizingSequence {
 public:
  enum class Mode { analytic, empirical_quantile };

  static NormalizingSequence analytic(const TailLaw& law);
  static NormalizingSequence empirical(const TailLaw& law,
                                       std::size_t calibration_draws,
                                       Rng rng);
  static NormalizingSequence empirical_from_sample(
      std::vector<double> abs_values);

  /// a_m; m >= 1 required.
  double at(std::size_t m) const;

  Mode mode() const { return mode_; }

 private:
  NormalizingSequence(Mode mode, TailLaw law, std::vector<double> sorted_abs)
      : mode_(mode), law_(law), sorted_abs_(std::move(sorted_abs)) {}

  Mode mode_;
  TailLaw law_;
  std::vector<double> sorted_abs_;  // ascending, empirical mode only
};

/// Hill estimator of the tail index from the k upper order statistics of
/// |data|: (1/k * sum_{i=1..k} log(|X|_(i) / |X|_(k+1)))^(-1).
double hill_estimate(std::span<const double> data, std::size_t k);

/// floor(n^0.6), the default bias/variance compromise for k.
std::size_t hill_default_k(std::size_t n);

}  // namespace heavytail
