#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "bintegral/numeric.hpp"

namespace bintegral::specfun {

// Constants, memoized per precision. Each is computed with guard bits and
// rounded, so a cached p-bit value equals the (p+64)-bit value rounded to p.
BigFloat pi(long bits);
BigFloat log2(long bits);
BigFloat zeta2(long bits);
BigFloat zeta3(long bits);
/// Li2(1/2) by direct series.
BigFloat li2_half(long bits);
/// Li3(1/2) by direct series (never via a closed form).
BigFloat li3_half(long bits);

/// Dilogarithm sum x^n/n^2 for -1 < x <= 1, at the precision of x.
/// Arguments above 1/2 go through the reflection Li2(x) + Li2(1-x) =
/// pi^2/6 - log x log(1-x); arguments below -1/2 through the Landen identity
/// Li2(x) = -Li2(x/(x-1)) - log^2(1-x)/2. Relative error <= 2^(8-p).
/// Throws std::domain_error outside (-1, 1].
BigFloat li2(const BigFloat& x);

/// Trilogarithm sum x^n/n^3 for -1 < x <= 1, at the precision of x. Summed
/// directly with a geometric tail bound; Li3(1) = zeta(3).
BigFloat li3(const BigFloat& x);

enum class GfId { G1, G2, G3, G4, G5, G6 };

/// "G1".."G6"; throws std::invalid_argument otherwise.
GfId parse_gf_id(std::string_view text);
std::string to_string(GfId id);
/// The identity in words, for reports.
std::string describe(GfId id);

struct GfCheck {
  BigFloat series;
  BigFloat closed;
  /// Bound on |series - closed| from truncation plus rounding slack.
  BigFloat tolerance;
  bool pass() const { return abs(series - closed) <= tolerance; }
};

/// Evaluates both sides of a harmonic-number generating function identity
/// independently at x, with N series terms at `bits` precision:
///   G1  sum_{n>=0} H^(2)_n x^n                  = Li2(x) / (1-x)
///   G2  sum_{n>=0} H_n x^n / (n+1)              = log^2(1-x) / (2x)
///   G3  sum_{n>=0} (H_n^2 - H^(2)_n) x^{n+1}/(n+1) = -log^3(1-x) / 3
///   G4  sum_{n>=0} H_n x^{n+1} / (n+1)^2        = log x log^2(1-x)/2
///                               + log(1-x) Li2(1-x) - Li3(1-x) + zeta(3)
///   G5  sum_{n>=1} H_n x^n                      = -log(1-x) / (1-x)
///   G6  sum_{k>=0} (-1)^k H_{k+1} x^k / (k+2)   = log^2(1+x) / (2x^2)
/// Requires 0 < |x| <= 1/2 (x > 0 for G4).
GfCheck gf_check(GfId id, const Rational& x, std::size_t terms, long bits);

}  // namespace bintegral::specfun
