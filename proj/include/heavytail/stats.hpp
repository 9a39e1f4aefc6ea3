#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "heavytail/errors.hpp"

namespace heavytail {

/// Type-7 empirical quantile (linear interpolation of order statistics).
/// `sorted` must be ascending and nonempty; prob in [0,1].
inline double quantile_type7(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw ParameterError("quantile of empty sample");
  if (!(prob >= 0.0 && prob <= 1.0))
    throw ParameterError("quantile prob outside [0,1]");
  if (sorted.size() == 1) return sorted[0];
  const double h = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double w = h - static_cast<double>(lo);
  return sorted[lo] + w * (sorted[lo + 1] - sorted[lo]);
}

/// Neumaier-compensated sum; robust when terms exceed the running sum,
/// which heavy-tailed data does routinely.
inline double compensated_sum(std::span<const double> xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

/// Compensated dot product of equal-length ranges.
inline double compensated_dot(std::span<const double> a,
                              std::span<const double> b) {
  double sum = 0.0, comp = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a[i] * b[i];
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

/// Compensated sum of squares.
inline double compensated_sum_squares(std::span<const double> xs) {
  return compensated_dot(xs, xs);
}

inline double median_of_sorted(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  if (n == 0) throw ParameterError("median of empty sample");
  return n % 2 == 1 ? sorted[n / 2]
                    : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

inline double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  return median_of_sorted(xs);
}

}  // namespace heavytail
