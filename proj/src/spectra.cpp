#include "heavytail/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "heavytail/errors.hpp"
#include "heavytail/parallel.hpp"
#include "heavytail/stats.hpp"

namespace heavytail {

ObservationMatrix build_matrix(const ProcessSpec& spec, std::size_t p,
                               std::size_t n, const Rng& rng) {
  spec.validate();
  if (p < 1 || n < 1)
    throw ParameterError("build_matrix: p and n must be >= 1");
  ObservationMatrix m;
  m.p = p;
  m.n = n;
  m.entries.resize(p * n);
  parallel_for(p, [&](std::size_t i) {
    Rng row_rng = rng.fork("row", i);
    const std::vector<double> path = simulate_path(spec, n, row_rng);
    std::copy(path.begin(), path.end(), m.entries.begin() + i * n);
  });
  return m;
}

namespace {

void check_finite(const ObservationMatrix& m) {
  for (double x : m.entries)
    if (!std::isfinite(x))
      throw NumericError("spectra: non-finite matrix entry");
}

// Gram matrix of the smaller side with compensated inner products:
// X X^T (p x p) when p <= n, else X^T X (n x n).
Eigen::MatrixXd small_gram(const ObservationMatrix& m) {
  const std::size_t d = std::min(m.p, m.n);
  Eigen::MatrixXd gram(d, d);
  if (m.p <= m.n) {
    parallel_for(d, [&](std::size_t i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double v = compensated_dot(m.row(i), m.row(j));
        gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
      }
    });
  } else {
    parallel_for(d, [&](std::size_t s) {
      std::vector<double> prod(m.p);
      for (std::size_t t = 0; t <= s; ++t) {
        for (std::size_t i = 0; i < m.p; ++i)
          prod[i] = m.at(i, s) * m.at(i, t);
        const double v = compensated_sum(prod);
        gram(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) = v;
        gram(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) = v;
      }
    });
  }
  return gram;
}

// Eigenvalues of the Gram matrix, descending.
std::vector<double> gram_eigenvalues_desc(const Eigen::MatrixXd& gram) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("spectra: eigensolve failed");
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() +
                                 solver.eigenvalues().size());
  std::sort(values.begin(), values.end(), std::greater<double>());
  return values;
}

}  // namespace

std::vector<double> row_sums_of_squares(const ObservationMatrix& m) {
  std::vector<double> sums(m.p);
  for (std::size_t i = 0; i < m.p; ++i)
    sums[i] = compensated_sum_squares(m.row(i));
  return sums;
}

SpectrumResult top_eigenvalues(const ObservationMatrix& m, std::size_t k,
                               double normalizer) {
  const std::size_t d = std::min(m.p, m.n);
  if (k < 1 || k > d)
    throw ParameterError("top_eigenvalues: require 1 <= k <= min(p,n)");
  if (!(normalizer > 0.0))
    throw ParameterError("top_eigenvalues: normalizer must be > 0");
  check_finite(m);

  std::vector<double> values = gram_eigenvalues_desc(small_gram(m));

  SpectrumResult result;
  result.normalizer = normalizer;
  result.sum_squares = compensated_sum_squares(m.entries);
  result.eigenvalue_sum = compensated_sum(values);

  const double lambda_max = values.empty() ? 0.0 : values.front();
  for (double& v : values) {
    if (v < 0.0) {
      result.max_clip = std::max(result.max_clip, -v);
      v = 0.0;
    }
  }
  if (result.max_clip > 1e-10 * lambda_max && lambda_max > 0.0)
    result.clip_warning = true;

  const double scale = std::max(std::abs(result.sum_squares), 1.0);
  if (std::abs(result.eigenvalue_sum - result.sum_squares) > 1e-8 * scale)
    throw NumericError("top_eigenvalues: trace identity violated");

  result.eigenvalues.assign(values.begin(),
                            values.begin() + static_cast<std::ptrdiff_t>(k));
  result.normalized.resize(k);
  for (std::size_t i = 0; i < k; ++i)
    result.normalized[i] = result.eigenvalues[i] / normalizer;
  return result;
}

DiagonalComparison diagonal_comparison(const ObservationMatrix& m,
                                       std::size_t k) {
  const SpectrumResult spectrum = top_eigenvalues(m, k);

  std::vector<double> sums = row_sums_of_squares(m);
  std::sort(sums.begin(), sums.end(), std::greater<double>());
  const std::size_t keep = std::min<std::size_t>(k, sums.size());

  DiagonalComparison cmp;
  cmp.eigenvalues = spectrum.eigenvalues;
  cmp.row_sums.assign(sums.begin(),
                      sums.begin() + static_cast<std::ptrdiff_t>(keep));
  double max_sq = 0.0;
  for (double x : m.entries) max_sq = std::max(max_sq, x * x);
  cmp.max_entry_sq = max_sq;
  return cmp;
}

}  // namespace heavytail
