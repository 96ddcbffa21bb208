#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bintegral/lambda.hpp"
#include "bintegral/numeric.hpp"
#include "bintegral/sequences.hpp"

namespace bintegral::corpus {

/// One of the five worked integrals, fully wired: coefficients, exact and
/// floating closed forms of W_n, the integrand, and the reference value.
///
/// All values are in "series units", i.e. the integral of source.integrand
/// over [0, lambda]. The integral that is actually of interest equals
/// integral_scale times that (ex2 evaluates log^2(1+t)/(2t^2) and doubles).
struct CorpusEntry {
  std::string id;
  long q = 0;  // ex4 only
  CoefficientSource source;
  Lambda lambda = Lambda::infinite();
  Reference reference;
  long integral_scale = 1;
  /// The integrand as it is usually written (before the 1/scale factor).
  RealFunction full_integrand;
  std::string full_integrand_text;
  std::string notes;

  BigFloat to_integral(const BigFloat& series_value) const { return series_value * integral_scale; }
  BigFloat integral_reference(long bits) const { return reference.evaluate(bits) * integral_scale; }
};

/// "ex1".."ex5"; ex4 needs q >= 1 (defaults to 1). Throws
/// std::invalid_argument for unknown ids or bad q.
CorpusEntry get(std::string_view id, std::optional<long> q = std::nullopt);

std::vector<std::string> ids();

/// ex1, ex2, ex3, ex4 for q = 1..max_q, ex5.
std::vector<CorpusEntry> all(long max_q = 5);

/// sum_{n=0}^{N} (H_n - 1) / ((n+1)(n+2)), which tends to 0 like log N / N.
BigFloat check_example2_zero_sum(std::size_t terms_upper, long bits = 128);
/// Same partial sum in exact arithmetic (limited by the harmonic table cap).
Rational check_example2_zero_sum_exact(std::size_t terms_upper);

}  // namespace bintegral::corpus
