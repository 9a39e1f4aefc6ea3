#include "heavytail/processes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "heavytail/errors.hpp"
#include "heavytail/stats.hpp"

namespace heavytail {

void MDependentVol::validate() const {
  if (!(tau > 0.0)) throw ParameterError("MDependentVol: tau must be > 0");
}

void ExpGaussianVol::validate() const {
  if (psi.empty() ||
      std::all_of(psi.begin(), psi.end(), [](double c) { return c == 0.0; }))
    throw ParameterError(
        "ExpGaussianVol: psi needs at least one nonzero coefficient");
  if (!(xi_std >= 0.0))
    throw ParameterError("ExpGaussianVol: xi_std must be >= 0");
}

double ExpGaussianVol::tau_eff_sq() const {
  double s = 0.0;
  for (double c : psi) s += c * c;
  return xi_std * xi_std * s;
}

void validate(const VolSpec& vol) {
  std::visit([](const auto& v) { v.validate(); }, vol);
}

void GarchSpec::validate() const {
  if (!(a0 > 0.0)) throw ParameterError("GarchSpec: a0 must be > 0");
  if (a.empty() && b.empty())
    throw ParameterError("GarchSpec: at least one of p,q >= 1 required");
  for (double c : a)
    if (!(c >= 0.0)) throw ParameterError("GarchSpec: negative coefficient");
  for (double c : b)
    if (!(c >= 0.0)) throw ParameterError("GarchSpec: negative coefficient");
  if (!a.empty() && !(a.back() > 0.0))
    throw ParameterError("GarchSpec: trailing alpha coefficient must be > 0");
  if (!b.empty() && !(b.back() > 0.0))
    throw ParameterError("GarchSpec: trailing beta coefficient must be > 0");
}

double GarchSpec::coefficient_sum() const {
  return std::accumulate(a.begin(), a.end(), 0.0) +
         std::accumulate(b.begin(), b.end(), 0.0);
}

ProcessSpec ProcessSpec::iid(TailLaw law) {
  return ProcessSpec{IidProcess{law}, 0};
}

ProcessSpec ProcessSpec::sv(TailLaw z_law, VolSpec vol) {
  return ProcessSpec{SvProcess{z_law, std::move(vol)}, 0};
}

ProcessSpec ProcessSpec::garch(GarchSpec spec, std::size_t burn_in) {
  return ProcessSpec{GarchProcess{std::move(spec)}, burn_in};
}

void ProcessSpec::validate() const {
  std::visit(
      [this](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IidProcess>) {
          v.law.validate();
        } else if constexpr (std::is_same_v<T, SvProcess>) {
          v.z_law.validate();
          heavytail::validate(v.vol);
        } else {
          v.garch.validate();
          if (burn_in < 1)
            throw ParameterError("ProcessSpec: garch needs burn_in >= 1");
        }
      },
      variant);
}

namespace {

std::vector<double> simulate_iid(const IidProcess& proc, std::size_t total,
                                 std::size_t n, Rng& rng) {
  Rng stream = rng.fork("iid");
  std::vector<double> path(total);
  for (auto& x : path) x = sample_tail_one(proc.law, stream);
  return {path.end() - static_cast<std::ptrdiff_t>(n), path.end()};
}

std::vector<double> simulate_volatility(const VolSpec& vol, std::size_t total,
                                        Rng& stream) {
  return std::visit(
      [&](const auto& v) -> std::vector<double> {
        using T = std::decay_t<decltype(v)>;
        std::vector<double> sigma(total);
        if constexpr (std::is_same_v<T, MDependentVol>) {
          // sigma_t = (1/(m+1)) * sum_{j=0..m} eta_{t-j}
          const std::size_t window = v.m + 1;
          std::vector<double> eta(total + v.m);
          for (auto& e : eta) e = stream.lognormal(v.mu, v.tau);
          for (std::size_t t = 0; t < total; ++t) {
            double s = 0.0;
            for (std::size_t j = 0; j < window; ++j) s += eta[t + j];
            sigma[t] = s / static_cast<double>(window);
          }
        } else {
          // log sigma_t = sum_k psi_k xi_{t-k}
          const std::size_t lags = v.psi.size() - 1;
          std::vector<double> xi(total + lags);
          for (auto& x : xi) x = v.xi_std * stream.normal();
          for (std::size_t t = 0; t < total; ++t) {
            double s = 0.0;
            for (std::size_t k = 0; k < v.psi.size(); ++k)
              s += v.psi[k] * xi[t + lags - k];
            sigma[t] = std::exp(s);
          }
        }
        return sigma;
      },
      vol);
}

std::vector<double> simulate_sv(const SvProcess& proc, std::size_t total,
                                std::size_t n, Rng& rng) {
  Rng vol_stream = rng.fork("sv_sigma");
  Rng z_stream = rng.fork("sv_z");
  const std::vector<double> sigma =
      simulate_volatility(proc.vol, total, vol_stream);
  std::vector<double> path(total);
  for (std::size_t t = 0; t < total; ++t)
    path[t] = sigma[t] * sample_tail_one(proc.z_law, z_stream);
  return {path.end() - static_cast<std::ptrdiff_t>(n), path.end()};
}

std::vector<double> simulate_garch(const GarchProcess& proc, std::size_t total,
                                   std::size_t n, Rng& rng) {
  const GarchSpec& g = proc.garch;
  Rng stream = rng.fork("garch_z");
  const double coef_sum = g.coefficient_sum();
  // Unconditional variance when it exists, else a0.
  double init = g.a0;
  if (coef_sum < 1.0) {
    const double v = g.a0 / (1.0 - coef_sum);
    if (std::isfinite(v) && v > 0.0) init = v;
  }
  const std::size_t p = g.a.size();
  const std::size_t q = g.b.size();
  std::vector<double> x_sq(p, init);      // X_{t-1}^2 .. X_{t-p}^2
  std::vector<double> sigma_sq(q, init);  // sigma_{t-1}^2 .. sigma_{t-q}^2
  std::vector<double> path(total);
  for (std::size_t t = 0; t < total; ++t) {
    double s2 = g.a0;
    for (std::size_t i = 0; i < p; ++i) s2 += g.a[i] * x_sq[i];
    for (std::size_t j = 0; j < q; ++j) s2 += g.b[j] * sigma_sq[j];
    const double x = std::sqrt(s2) * stream.normal();
    path[t] = x;
    if (p > 0) {
      std::rotate(x_sq.rbegin(), x_sq.rbegin() + 1, x_sq.rend());
      x_sq[0] = x * x;
    }
    if (q > 0) {
      std::rotate(sigma_sq.rbegin(), sigma_sq.rbegin() + 1, sigma_sq.rend());
      sigma_sq[0] = s2;
    }
  }
  return {path.end() - static_cast<std::ptrdiff_t>(n), path.end()};
}

}  // namespace

std::vector<double> simulate_path(const ProcessSpec& spec, std::size_t n,
                                  Rng& rng) {
  spec.validate();
  if (n < 1) throw ParameterError("simulate_path: n must be >= 1");
  const std::size_t total = spec.burn_in + n;
  return std::visit(
      [&](const auto& proc) {
        using T = std::decay_t<decltype(proc)>;
        if constexpr (std::is_same_v<T, IidProcess>)
          return simulate_iid(proc, total, n, rng);
        else if constexpr (std::is_same_v<T, SvProcess>)
          return simulate_sv(proc, total, n, rng);
        else
          return simulate_garch(proc, total, n, rng);
      },
      spec.variant);
}

StationarityMargin garch_stationarity_margin(double a1, double b1,
                                             std::size_t samples, Rng& rng) {
  if (!(a1 >= 0.0) || !(b1 >= 0.0) || (a1 == 0.0 && b1 == 0.0))
    throw ParameterError(
        "garch_stationarity_margin: need a1 >= 0, b1 >= 0, not both zero");
  if (a1 == 0.0) return {std::log(b1), 0.0, 0};  // constant argument
  if (samples < 2)
    throw ParameterError("garch_stationarity_margin: samples must be >= 2");
  Rng stream = rng.fork("garch_margin");
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double z = stream.normal();
    const double v = std::log(a1 * z * z + b1);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / static_cast<double>(samples);
  const double var =
      (sum_sq - sum * mean) / static_cast<double>(samples - 1);
  const double se = std::sqrt(std::max(var, 0.0) /
                              static_cast<double>(samples));
  return {mean, se, samples};
}

StationarityMargin garch_stationarity_margin(const GarchSpec& spec,
                                             std::size_t samples, Rng& rng) {
  spec.validate();
  if (spec.a.size() != 1 || spec.b.size() != 1)
    throw UnsupportedError(
        "garch_stationarity_margin: only GARCH(1,1) is supported");
  return garch_stationarity_margin(spec.a[0], spec.b[0], samples, rng);
}

double extremal_index_blocks(std::span<const double> data,
                             std::size_t block_len,
                             double threshold_quantile) {
  if (block_len < 2)
    throw ParameterError("extremal_index_blocks: block_len must be >= 2");
  if (!(threshold_quantile > 0.0 && threshold_quantile < 1.0))
    throw ParameterError(
        "extremal_index_blocks: threshold_quantile must be in (0,1)");
  if (data.size() < 10 * block_len)
    throw ParameterError(
        "extremal_index_blocks: data length must be >= 10*block_len");
  std::vector<double> abs_values(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    abs_values[i] = std::abs(data[i]);
  std::vector<double> sorted = abs_values;
  std::sort(sorted.begin(), sorted.end());
  const double u = quantile_type7(sorted, threshold_quantile);

  const std::size_t blocks = data.size() / block_len;
  std::size_t exceedances = 0;
  std::size_t blocks_hit = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    bool hit = false;
    for (std::size_t i = b * block_len; i < (b + 1) * block_len; ++i) {
      if (abs_values[i] > u) {
        ++exceedances;
        hit = true;
      }
    }
    if (hit) ++blocks_hit;
  }
  if (exceedances == 0)
    throw EstimationError(
        "extremal_index_blocks: no exceedances above threshold");
  const double theta = static_cast<double>(blocks_hit) /
                       static_cast<double>(exceedances);
  return std::min(theta, 1.0);
}

}  // namespace heavytail
