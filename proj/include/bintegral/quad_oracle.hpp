#pragma once

#include <cstddef>

#include "bintegral/numeric.hpp"
#include "bintegral/sequences.hpp"

namespace bintegral::quad {

struct QuadOptions {
  long bits = 128;
  std::size_t max_subdivisions = 4000;
};

struct QuadResult {
  BigFloat value;
  BigFloat abs_error_estimate;
  std::size_t subdivisions = 0;
  bool converged = false;
};

/// Smallest absolute tolerance the oracle will claim at `bits` of working
/// precision: 2^(88 - bits), about 1e-12 at the default 128 bits.
double tolerance_floor(long bits);

/// Globally adaptive integration on (a, b). Each panel is integrated with a
/// 10-point Gauss-Legendre rule and compared with the sum over its two
/// halves; the panel with the largest difference is halved until the summed
/// differences drop below tol. The rule is open, so g is never evaluated at
/// a or b. Panels are summed in order of their left endpoint.
///
/// converged is false when the subdivision limit is hit or tol is below
/// tolerance_floor(bits); the estimate is still returned.
QuadResult integrate_finite(const RealFunction& g, const BigFloat& a, const BigFloat& b, double tol,
                            const QuadOptions& opts = {});

/// Integral over (0, inf) via x = t/(1-t): integrate_finite of
/// g(t/(1-t)) / (1-t)^2 over (0, 1).
QuadResult integrate_halfline(const RealFunction& g, double tol, const QuadOptions& opts = {});

}  // namespace bintegral::quad
