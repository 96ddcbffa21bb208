#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bintegral/lambda.hpp"
#include "bintegral/numeric.hpp"
#include "bintegral/sequences.hpp"

namespace bintegral {

enum class Mode {
  GenericExact,  // W_n from exact rational binomial transform
  GenericFloat,  // W_n from floating binomial sums, p >= max_terms + 64 enforced
  ClosedForm,    // W_n from the source's registered closed form
};

enum class TailCorrection {
  None,
  /// lambda = infinity only: models W_n (n+1)^2 as A log(n+1) + B, fitted on
  /// the last decade of terms, and adds the integral of the model tail. With
  /// A = 0 this is the plain c/N p-series correction.
  PSeries,
};

Mode parse_mode(std::string_view text);
std::string to_string(Mode mode);
TailCorrection parse_tail(std::string_view text);
std::string to_string(TailCorrection tail);

class InvalidOptions : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EngineOptions {
  Lambda lambda = Lambda::finite(Rational(1));
  long precision_bits = 128;
  std::size_t max_terms = 200;
  Mode mode = Mode::GenericExact;
  TailCorrection tail = TailCorrection::None;
  /// Finite lambda: stop once |term| <= stop_rel_tol |partial sum| for three
  /// consecutive terms. Zero means 2^-precision_bits.
  double stop_rel_tol = 0.0;
  bool keep_trace = false;
};

struct TraceRow {
  std::size_t n = 0;
  BigFloat term;
  BigFloat partial_sum;
};

struct IntegralResult {
  BigFloat value;
  std::size_t terms_used = 0;
  /// Truncation estimate; a heuristic, not a certified bound.
  BigFloat error_estimate;
  bool diverged = false;
  /// Precision actually used (generic-float may raise it).
  long working_bits = 0;
  /// Tail added by the p-series correction, if it was applied.
  std::optional<BigFloat> tail_added;
  /// Fitted log coefficient A of the tail model (0 for a pure c/n^2 tail).
  std::optional<double> tail_log_coefficient;
  std::vector<TraceRow> trace;
};

/// Integral of f over [0, lambda] as sum_n rho^{n+1} W_n, rho = lambda/(lambda+1)
/// (rho = 1 for lambda = infinity). Throws InvalidOptions for inconsistent
/// options and HarmonicCapError when exact coefficients run out.
IntegralResult integrate(const CoefficientSource& src, const EngineOptions& opts);

/// f(lambda) = (1/(lambda+1)^2) sum_n rho^n s_n with s_n = (n+1) W_n; lambda
/// must be finite. Same stopping and divergence rules as integrate.
IntegralResult point_eval(const CoefficientSource& src, const EngineOptions& opts);

struct TableRow {
  std::size_t n = 0;
  BigFloat term;
  BigFloat partial_sum;
  std::optional<BigFloat> abs_err;
};

/// One row per computed term of integrate (identical values to its trace);
/// abs_err against `reference` when given. No tail correction is applied.
/// `diverged`, when non-null, receives the divergence flag of the run.
std::vector<TableRow> convergence_table(const CoefficientSource& src, const EngineOptions& opts,
                                        const std::optional<BigFloat>& reference = std::nullopt,
                                        bool* diverged = nullptr);

/// Precision generic-float mode needs for n_max terms.
inline long cancellation_safe_bits(std::size_t n_max) { return static_cast<long>(n_max) + 64; }

}  // namespace bintegral
