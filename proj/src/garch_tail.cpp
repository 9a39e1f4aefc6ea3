#include "heavytail/garch_tail.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "heavytail/errors.hpp"

namespace heavytail {

namespace {

GaussHermiteRule compute_gauss_hermite(std::size_t n) {
  // Golub-Welsch: eigenvalues of the Jacobi matrix are the nodes, weights
  // come from the first eigenvector components. Off-diagonal k = sqrt(k/2).
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(n) - 1);
  for (Eigen::Index k = 0; k + 1 < static_cast<Eigen::Index>(n); ++k)
    sub[k] = std::sqrt(0.5 * static_cast<double>(k + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub,
                                Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw NumericError("gauss_hermite: tridiagonal eigensolve failed");
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double total = std::sqrt(std::numbers::pi);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    const double v0 =
        solver.eigenvectors()(0, static_cast<Eigen::Index>(i));
    rule.weights[i] = total * v0 * v0;
  }
  return rule;
}

const GaussHermiteRule& cached_gauss_hermite(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, GaussHermiteRule> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, compute_gauss_hermite(n)).first;
  return it->second;
}

// E[g(Z)] = (1/sqrt(pi)) sum w_i g(sqrt(2) x_i) for standard gaussian Z.
template <typename G>
double gaussian_expectation(std::size_t n, G&& g) {
  const GaussHermiteRule& rule = cached_gauss_hermite(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    sum += rule.weights[i] * g(std::numbers::sqrt2 * rule.nodes[i]);
  return sum / std::sqrt(std::numbers::pi);
}

double moment_h_raw(const MomentFunction& f, double alpha, std::size_t n) {
  return gaussian_expectation(n, [&](double z) {
    return std::pow(f.a1 * z * z + f.b1, alpha);
  });
}

inline constexpr double kEulerGamma = 0.5772156649015329;

}  // namespace

const GaussHermiteRule& gauss_hermite(std::size_t n) {
  if (n < 2) throw ParameterError("gauss_hermite: n must be >= 2");
  return cached_gauss_hermite(n);
}

void MomentFunction::validate() const {
  if (!(a1 > 0.0)) throw ParameterError("MomentFunction: a1 must be > 0");
  if (!(b1 >= 0.0)) throw ParameterError("MomentFunction: b1 must be >= 0");
  if (quadrature_nodes < 32)
    throw ParameterError("MomentFunction: quadrature_nodes must be >= 32");
}

double moment_h(const MomentFunction& f, double alpha) {
  f.validate();
  if (!(alpha >= 0.0)) throw ParameterError("moment_h: alpha must be >= 0");
  const double coarse = moment_h_raw(f, alpha, f.quadrature_nodes);
  const double fine = moment_h_raw(f, alpha, 2 * f.quadrature_nodes);
  const double denom = std::max(std::abs(fine), 1e-300);
  if (std::abs(coarse - fine) / denom > 1e-6)
    throw PrecisionError(
        "moment_h: doubled-node quadrature disagrees beyond 1e-6 relative; "
        "raise quadrature_nodes");
  return fine;
}

double log_moment(const MomentFunction& f) {
  f.validate();
  if (f.b1 == 0.0) {
    // E log(a1 Z^2) = log a1 + E log Z^2 = log a1 - gamma - log 2.
    return std::log(f.a1) - kEulerGamma - std::numbers::ln2;
  }
  const auto integrand = [&](double z) {
    return std::log(f.a1 * z * z + f.b1);
  };
  const double coarse = gaussian_expectation(f.quadrature_nodes, integrand);
  const double fine = gaussian_expectation(2 * f.quadrature_nodes, integrand);
  const double denom = std::max(std::abs(fine), 1e-12);
  if (std::abs(coarse - fine) / denom > 1e-6)
    throw PrecisionError(
        "log_moment: doubled-node quadrature disagrees beyond 1e-6 relative");
  return fine;
}

TailIndexResult solve_tail_index(const MomentFunction& f, double tol,
                                 double alpha_max) {
  f.validate();
  if (!(tol > 0.0)) throw ParameterError("solve_tail_index: tol must be > 0");
  const double margin = log_moment(f);
  if (!(margin < 0.0))
    throw DomainError(
        "solve_tail_index: E log(a1 Z^2 + b1) >= 0, no stationary solution");

  const double h1 = f.a1 + f.b1;  // h(1) = a1 E Z^2 + b1, exactly
  if (std::abs(h1 - 1.0) <= 1e-14)
    return {1.0, moment_h(f, 1.0), margin, f.quadrature_nodes};

  // Bracket [lo, hi] with h(lo) < 1 < h(hi). Under stationarity h(0) = 1,
  // h' (0) < 0, and h is convex, so h crosses 1 from below exactly once.
  double lo, hi;
  if (h1 < 1.0) {
    lo = 1.0;
    hi = 2.0;
    while (moment_h(f, hi) <= 1.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > alpha_max)
        throw NoRootError(
            "solve_tail_index: h stayed below 1 up to alpha_max; tail too "
            "light to matter");
    }
  } else {
    hi = 1.0;
    lo = 0.5;
    while (moment_h(f, lo) >= 1.0) {
      lo *= 0.5;
      if (lo < 1e-12)
        throw NumericError(
            "solve_tail_index: could not find h < 1 near zero");
    }
  }

  double mid = 0.5 * (lo + hi);
  double h_mid = moment_h(f, mid);
  for (int iter = 0; iter < 200; ++iter) {
    if (hi - lo <= 1e-8 && std::abs(h_mid - 1.0) <= tol) break;
    if (h_mid < 1.0)
      lo = mid;
    else
      hi = mid;
    mid = 0.5 * (lo + hi);
    h_mid = moment_h(f, mid);
  }
  return {mid, h_mid, margin, f.quadrature_nodes};
}

}  // namespace heavytail
