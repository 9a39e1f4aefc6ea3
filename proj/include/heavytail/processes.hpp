#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "heavytail/rng.hpp"
#include "heavytail/tail.hpp"

namespace heavytail {

/// Volatility sigma_t = average of m+1 consecutive iid lognormal(mu, tau)
/// variables: nonnegative, stationary, m-dependent, all moments finite.
struct MDependentVol {
  std::size_t m = 1;
  double mu = 0.0;
  double tau = 0.5;

  void validate() const;
};

/// log sigma_t = sum_k psi[k] * xi_{t-k}, xi iid N(0, xi_std^2) over the
/// finite window k = 0..psi.size()-1.
struct ExpGaussianVol {
  std::vector<double> psi;
  double xi_std = 1.0;

  void validate() const;
  /// Var(log sigma_t) = xi_std^2 * sum psi_k^2.
  double tau_eff_sq() const;
};

using VolSpec = std::variant<MDependentVol, ExpGaussianVol>;
void validate(const VolSpec& vol);

/// GARCH(p,q): X_t = sigma_t Z_t,
/// sigma_t^2 = a0 + sum a[i] X_{t-1-i}^2 + sum b[j] sigma_{t-1-j}^2,
/// Z iid standard gaussian.
struct GarchSpec {
  double a0;
  std::vector<double> a;
  std::vector<double> b;

  void validate() const;
  double coefficient_sum() const;
};

struct IidProcess {
  TailLaw law;
};

struct SvProcess {
  TailLaw z_law;
  VolSpec vol;
};

struct GarchProcess {
  GarchSpec garch;
};

inline constexpr std::size_t kDefaultGarchBurnIn = 1000;

struct ProcessSpec {
  std::variant<IidProcess, SvProcess, GarchProcess> variant;
  std::size_t burn_in = 0;

  static ProcessSpec iid(TailLaw law);
  static ProcessSpec sv(TailLaw z_law, VolSpec vol);
  static ProcessSpec garch(GarchSpec spec,
                           std::size_t burn_in = kDefaultGarchBurnIn);

  void validate() const;
};

/// One realization of length n, after discarding burn_in initial values.
/// SV volatility and noise use independent sub-streams of rng.
std::vector<double> simulate_path(const ProcessSpec& spec, std::size_t n,
                                  Rng& rng);

struct StationarityMargin {
  double estimate;
  double std_error;
  std::size_t samples;

  /// Estimate at least 3 standard errors below zero.
  bool stationary_at_3se() const {
    return estimate + 3.0 * std_error < 0.0;
  }
};

/// Monte Carlo estimate of E log(a1 Z^2 + b1) for standard gaussian Z; the
/// GARCH(1,1) strict-stationarity margin. a1 == 0 is degenerate and handled
/// analytically (constant argument).
StationarityMargin garch_stationarity_margin(double a1, double b1,
                                             std::size_t samples, Rng& rng);

/// GarchSpec front end; anything other than (1,1) is unsupported.
StationarityMargin garch_stationarity_margin(const GarchSpec& spec,
                                             std::size_t samples, Rng& rng);

/// Blocks estimator of the extremal index: (number of complete blocks whose
/// max of |data| exceeds u) / (number of exceedances of u within those
/// blocks), u the empirical threshold_quantile of |data|. Always in (0,1].
double extremal_index_blocks(std::span<const double> data,
                             std::size_t block_len, double threshold_quantile);

}  // namespace heavytail
