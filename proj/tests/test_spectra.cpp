#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "heavytail/errors.hpp"
#include "heavytail/spectra.hpp"
#include "heavytail/stats.hpp"
#include "oracles.hpp"

using namespace heavytail;

namespace {

ObservationMatrix from_rows(std::vector<std::vector<double>> rows) {
  ObservationMatrix m;
  m.p = rows.size();
  m.n = rows[0].size();
  for (const auto& r : rows)
    m.entries.insert(m.entries.end(), r.begin(), r.end());
  return m;
}

// Dense dual-Gram oracle: eigenvalues of X X^T and X^T X computed with plain
// Eigen arithmetic, descending.
std::pair<std::vector<double>, std::vector<double>> dense_dual_spectra(
    const ObservationMatrix& m) {
  Eigen::MatrixXd x(m.p, m.n);
  for (std::size_t i = 0; i < m.p; ++i)
    for (std::size_t t = 0; t < m.n; ++t)
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) =
          m.at(i, t);
  Eigen::MatrixXd big = x * x.transpose();
  Eigen::MatrixXd small = x.transpose() * x;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s1(big,
                                                    Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s2(small,
                                                    Eigen::EigenvaluesOnly);
  std::vector<double> v1(s1.eigenvalues().data(),
                         s1.eigenvalues().data() + s1.eigenvalues().size());
  std::vector<double> v2(s2.eigenvalues().data(),
                         s2.eigenvalues().data() + s2.eigenvalues().size());
  std::sort(v1.begin(), v1.end(), std::greater<double>());
  std::sort(v2.begin(), v2.end(), std::greater<double>());
  return {v1, v2};
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("diagonal matrix squares its entries") {
  const auto m = from_rows({{1.0, 0.0}, {0.0, 2.0}});
  const auto r = top_eigenvalues(m, 2);
  CHECK(r.eigenvalues[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rank-one matrix has one nonzero eigenvalue") {
  const auto m = from_rows({{1.0, 1.0}, {1.0, 1.0}});
  const auto r = top_eigenvalues(m, 2);
  CHECK(r.eigenvalues[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.eigenvalues[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("single row: the eigenvalue is the sum of squares") {
  const auto m = from_rows({{1.0, 2.0, 3.0}});
  const auto r = top_eigenvalues(m, 1);
  CHECK(r.eigenvalues[0] == doctest::Approx(14.0).epsilon(1e-12));
  const auto cmp = diagonal_comparison(m, 1);
  CHECK(cmp.eigenvalues[0] == doctest::Approx(cmp.row_sums[0]).epsilon(1e-12));
  CHECK(cmp.max_entry_sq == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("5x7 fixture matches the dense dual-Gram oracle") {
  const ProcessSpec spec = ProcessSpec::iid(TailLaw{1.0, 0.5, 1.0});
  const ObservationMatrix m = build_matrix(spec, 5, 7, Rng(99));
  const auto [big, small] = dense_dual_spectra(m);
  const auto mine = top_eigenvalues(m, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(mine.eigenvalues[i] ==
          doctest::Approx(big[i]).epsilon(1e-8).scale(big[0]));
    CHECK(mine.eigenvalues[i] ==
          doctest::Approx(small[i]).epsilon(1e-8).scale(small[0]));
  }
}

TEST_CASE("gram duality and trace identity on random fixtures up to 50x80") {
  std::mt19937_64 shape_rng(7);
  for (int fixture = 0; fixture < 30; ++fixture) {
    const std::size_t p = 1 + shape_rng() % 50;
    const std::size_t n = 1 + shape_rng() % 80;
    const double alpha = fixture % 2 == 0 ? 0.8 : 1.5;
    const ProcessSpec spec = ProcessSpec::iid(TailLaw{alpha, 0.7, 1.0});
    const ObservationMatrix m =
        build_matrix(spec, p, n, Rng(1000 + fixture));
    const std::size_t d = std::min(p, n);
    const auto mine = top_eigenvalues(m, d);
    // trace identity
    CHECK(mine.eigenvalue_sum ==
          doctest::Approx(mine.sum_squares).epsilon(1e-8));
    // duality against the dense oracle on the nonzero spectrum
    const auto [big, small] = dense_dual_spectra(m);
    for (std::size_t i = 0; i < d; ++i) {
      CHECK(mine.eigenvalues[i] ==
            doctest::Approx(big[i]).epsilon(1e-8).scale(big[0]));
      CHECK(mine.eigenvalues[i] ==
            doctest::Approx(small[i]).epsilon(1e-8).scale(big[0]));
    }
    // nonnegativity after clipping
    for (double v : mine.eigenvalues) CHECK(v >= 0.0);
    CHECK(mine.max_clip <= 1e-10 * std::max(mine.eigenvalues[0], 1.0));
    // ordering
    CHECK(std::is_sorted(mine.eigenvalues.rbegin(),
                         mine.eigenvalues.rend()));
  }
}

TEST_CASE("build_matrix is deterministic and rows differ") {
  const ProcessSpec spec = ProcessSpec::iid(TailLaw{1.0, 1.0, 1.0});
  const ObservationMatrix a = build_matrix(spec, 2, 3, Rng(7));
  const ObservationMatrix b = build_matrix(spec, 2, 3, Rng(7));
  CHECK(a.entries == b.entries);
  // independence smoke test: distinct rows from distinct row streams
  CHECK(std::vector<double>(a.row(0).begin(), a.row(0).end()) !=
        std::vector<double>(a.row(1).begin(), a.row(1).end()));
}

TEST_CASE("thread count does not change build_matrix output") {
  const ProcessSpec spec = ProcessSpec::iid(TailLaw{0.9, 0.5, 1.0});
  setenv("HEAVYTAIL_THREADS", "1", 1);
  const ObservationMatrix a = build_matrix(spec, 16, 10, Rng(21));
  setenv("HEAVYTAIL_THREADS", "8", 1);
  const ObservationMatrix b = build_matrix(spec, 16, 10, Rng(21));
  unsetenv("HEAVYTAIL_THREADS");
  CHECK(a.entries == b.entries);
}

TEST_CASE("parameter and numeric errors") {
  const auto m = from_rows({{1.0, 2.0}, {3.0, 4.0}});
  CHECK_THROWS_AS(top_eigenvalues(m, 0), ParameterError);
  CHECK_THROWS_AS(top_eigenvalues(m, 3), ParameterError);
  auto bad = m;
  bad.entries[1] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(top_eigenvalues(bad, 1), NumericError);
}

TEST_CASE("diagonal comparison coincides for diagonal data") {
  const auto m = from_rows({{3.0, 0.0, 0.0},
                            {0.0, -2.0, 0.0},
                            {0.0, 0.0, 1.0}});
  const auto cmp = diagonal_comparison(m, 3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(cmp.eigenvalues[i] ==
          doctest::Approx(cmp.row_sums[i]).epsilon(1e-12));
}

TEST_CASE("diagonal approximation: median gap small at alpha = 0.8") {
  // median over replications of |lambda_1 / D_1 - 1| <= 0.05 at p = n = 200;
  // measured values are far below the bound
  const ProcessSpec spec = ProcessSpec::iid(TailLaw{0.8, 1.0, 1.0});
  std::vector<double> gaps;
  for (int rep = 0; rep < 20; ++rep) {
    const ObservationMatrix m =
        build_matrix(spec, 200, 200, Rng(3000 + rep));
    const auto cmp = diagonal_comparison(m, 1);
    gaps.push_back(std::abs(cmp.eigenvalues[0] / cmp.row_sums[0] - 1.0));
  }
  CHECK(median(gaps) <= 0.05);
}

TEST_CASE("compensated dot survives extreme dynamic range") {
  // 1e16 followed by 1000 ones: naive big-first accumulation rounds every
  // +1 away (ulp is 2 there); compensation keeps them all
  std::vector<double> v(1001, 1.0);
  v[0] = 1e8;  // squares to 1e16
  const double got = compensated_sum_squares(v);
  CHECK(got == 10000000000001000.0);
  double naive = 0.0;
  for (double x : v) naive += x * x;
  CHECK(naive < got);
}

}  // TEST_SUITE
