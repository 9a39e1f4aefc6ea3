#include "heavytail/tail.hpp"

#include <algorithm>
#include <cmath>

#include "heavytail/errors.hpp"
#include "heavytail/stats.hpp"

namespace heavytail {

void TailLaw::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw ParameterError("TailLaw: alpha must be in (0,2)");
  if (!(q >= 0.0 && q <= 1.0))
    throw ParameterError("TailLaw: q must be in [0,1]");
  if (!(scale > 0.0)) throw ParameterError("TailLaw: scale must be positive");
}

double sample_tail_one(const TailLaw& law, Rng& rng) {
  const double sign = rng.uniform() < law.q ? 1.0 : -1.0;
  const double magnitude =
      law.scale * std::exp(-std::log(rng.uniform()) / law.alpha);
  return sign * magnitude;
}

std::vector<double> sample_tail(const TailLaw& law, std::size_t count,
                                Rng& rng) {
  law.validate();
  if (count < 1) throw ParameterError("sample_tail: count must be >= 1");
  std::vector<double> out(count);
  for (auto& x : out) x = sample_tail_one(law, rng);
  return out;
}

NormalizingSequence NormalizingSequence::analytic(const TailLaw& law) {
  law.validate();
  return NormalizingSequence(Mode::analytic, law, {});
}

NormalizingSequence NormalizingSequence::empirical(
    const TailLaw& law, std::size_t calibration_draws, Rng rng) {
  law.validate();
  if (calibration_draws < 2)
    throw ParameterError("NormalizingSequence: calibration sample too small");
  std::vector<double> abs_values(calibration_draws);
  for (auto& v : abs_values) v = std::abs(sample_tail_one(law, rng));
  return empirical_from_sample(std::move(abs_values));
}

NormalizingSequence NormalizingSequence::empirical_from_sample(
    std::vector<double> abs_values) {
  if (abs_values.size() < 2)
    throw ParameterError("NormalizingSequence: calibration sample too small");
  std::sort(abs_values.begin(), abs_values.end());
  return NormalizingSequence(Mode::empirical_quantile, TailLaw{1.0},
                             std::move(abs_values));
}

double NormalizingSequence::at(std::size_t m) const {
  if (m == 0) throw ParameterError("NormalizingSequence: m must be >= 1");
  if (mode_ == Mode::analytic)
    return law_.scale *
           std::pow(static_cast<double>(m), 1.0 / law_.alpha);
  const double prob = 1.0 - 1.0 / static_cast<double>(m);
  return quantile_type7(sorted_abs_, prob);
}

double hill_estimate(std::span<const double> data, std::size_t k) {
  const std::size_t n = data.size();
  if (k < 1 || k >= n)
    throw ParameterError("hill_estimate: require 1 <= k < length(data)");
  std::vector<double> abs_values(n);
  for (std::size_t i = 0; i < n; ++i) abs_values[i] = std::abs(data[i]);
  // Only the k+1 largest order statistics matter.
  std::nth_element(abs_values.begin(), abs_values.begin() + k,
                   abs_values.end(), std::greater<double>());
  std::sort(abs_values.begin(), abs_values.begin() + k + 1,
            std::greater<double>());
  const double pivot = abs_values[k];
  if (!(pivot > 0.0))
    throw EstimationError("hill_estimate: |X|_(k+1) is zero");
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    sum += std::log(abs_values[i] / pivot);
  if (!(sum > 0.0))
    throw EstimationError(
        "hill_estimate: degenerate order statistics (zero log spacing)");
  return static_cast<double>(k) / sum;
}

std::size_t hill_default_k(std::size_t n) {
  // nudge before flooring: pow(1e5, 0.6) lands just under 1000
  const auto k = static_cast<std::size_t>(
      std::floor(std::pow(static_cast<double>(n), 0.6) * (1.0 + 1e-12)));
  return std::max<std::size_t>(1, k);
}

}  // namespace heavytail
