#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "heavytail/processes.hpp"
#include "heavytail/rng.hpp"

namespace heavytail {

/// p x n data matrix, row-major; rows are independent process copies.
struct ObservationMatrix {
  std::size_t p = 0;
  std::size_t n = 0;
  std::vector<double> entries;

  double at(std::size_t i, std::size_t t) const { return entries[i * n + t]; }
  std::span<const double> row(std::size_t i) const {
    return {entries.data() + i * n, n};
  }
};

/// Each row i is an independent path with its stream derived from
/// (rng key, row index). Rows are generated in parallel.
ObservationMatrix build_matrix(const ProcessSpec& spec, std::size_t p,
                               std::size_t n, const Rng& rng);

struct SpectrumResult {
  std::vector<double> eigenvalues;  // top k, nonincreasing, clipped to >= 0
  double normalizer = 1.0;          // a_np^2
  std::vector<double> normalized;   // eigenvalues / normalizer
  double eigenvalue_sum = 0.0;      // over all min(p,n) eigenvalues
  double sum_squares = 0.0;         // sum of X_it^2, compensated
  double max_clip = 0.0;            // largest |negative eigenvalue| clipped
  bool clip_warning = false;        // clip exceeded 1e-10 * lambda_max
};

/// Top k eigenvalues of X X^T via the smaller Gram matrix (X^T X when n < p).
/// Inner products use compensated summation. The trace identity
/// sum(eigenvalues) == sum(X_it^2) is checked to 1e-8 relative on every call.
SpectrumResult top_eigenvalues(const ObservationMatrix& m, std::size_t k,
                               double normalizer = 1.0);

struct DiagonalComparison {
  std::vector<double> eigenvalues;   // top k of X X^T
  std::vector<double> row_sums;      // top k of diag(X X^T), sorted desc
  double max_entry_sq = 0.0;         // max_it X_it^2
};

/// Both sorted sequences for operator-norm-vs-diagonal gap diagnostics,
/// plus the largest squared entry.
DiagonalComparison diagonal_comparison(const ObservationMatrix& m,
                                       std::size_t k);

/// diag(X X^T): per-row compensated sums of squares (unsorted).
std::vector<double> row_sums_of_squares(const ObservationMatrix& m);

}  // namespace heavytail
