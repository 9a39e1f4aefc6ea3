#include <cmath>
#include <vector>

#include "doctest.h"
#include "heavytail/rng.hpp"

using namespace heavytail;

TEST_SUITE("rng") {

TEST_CASE("same key gives bit-identical streams") {
  Rng a(12345), b(12345);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.uniform() == b.uniform());
    CHECK(a.normal() == b.normal());
  }
}

TEST_CASE("fork depends on key, not consumption") {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) a.uniform();
  Rng child_a = a.fork("x", 3);
  Rng child_b = b.fork("x", 3);
  for (int i = 0; i < 100; ++i)
    CHECK(child_a.uniform() == child_b.uniform());
}

TEST_CASE("forks with different purposes or indices differ") {
  const Rng root(99);
  Rng c1 = root.fork("rows", 0);
  Rng c2 = root.fork("rows", 1);
  Rng c3 = root.fork("cols", 0);
  const double v1 = c1.uniform(), v2 = c2.uniform(), v3 = c3.uniform();
  CHECK(v1 != v2);
  CHECK(v1 != v3);
  CHECK(v2 != v3);
}

TEST_CASE("uniform stays strictly inside (0,1)") {
  Rng rng(5);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("normal moments at Monte Carlo accuracy") {
  Rng rng(11);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  CHECK(std::abs(sum / n) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("exponential has unit mean") {
  Rng rng(13);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rng.exponential();
  CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("derive_stream mixes every argument") {
  const auto base = derive_stream(1, "tag", 2, 3);
  CHECK(base != derive_stream(2, "tag", 2, 3));
  CHECK(base != derive_stream(1, "gat", 2, 3));
  CHECK(base != derive_stream(1, "tag", 3, 3));
  CHECK(base != derive_stream(1, "tag", 2, 4));
}

}  // TEST_SUITE
