#pragma once

#include <cstddef>
#include <vector>

namespace heavytail {

/// Physicists' Gauss-Hermite rule: integral f(x) exp(-x^2) dx
/// ~= sum w_i f(x_i). Nodes ascending. Computed by Golub-Welsch and cached.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussHermiteRule& gauss_hermite(std::size_t n);

/// The GARCH(1,1) moment function h(alpha) = E[(a1 Z^2 + b1)^alpha],
/// Z standard gaussian.
struct MomentFunction {
  double a1;
  double b1 = 0.0;
  std::size_t quadrature_nodes = 256;

  void validate() const;  // a1 > 0, b1 >= 0, quadrature_nodes >= 32
};

/// Gauss-Hermite value of h(alpha), cross-checked against a doubled-node
/// evaluation; relative disagreement beyond 1e-6 raises PrecisionError.
double moment_h(const MomentFunction& f, double alpha);

/// E log(a1 Z^2 + b1) by the same quadrature; exact closed form when b1 == 0.
double log_moment(const MomentFunction& f);

struct TailIndexResult {
  double alpha_star;
  double h_at_alpha;      // h(alpha_star)
  double margin;          // E log(a1 Z^2 + b1), quadrature
  std::size_t nodes;      // base node count used
};

inline constexpr double kDefaultTailTol = 1e-8;
inline constexpr double kDefaultAlphaMax = 50.0;

/// The unique alpha* > 0 with h(alpha*) = 1. Requires the stationarity
/// margin E log(a1 Z^2 + b1) < 0. h(1) = a1 + b1 exactly, which decides the
/// bracket side; the bracket is then bisected to |h - 1| <= tol and interval
/// width <= 1e-8. Bracket growth past alpha_max raises NoRootError.
TailIndexResult solve_tail_index(const MomentFunction& f,
                                 double tol = kDefaultTailTol,
                                 double alpha_max = kDefaultAlphaMax);

}  // namespace heavytail
