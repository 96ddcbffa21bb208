#include "bintegral/series_engine.hpp"

#include <cmath>
#include <functional>
#include <memory>

#include "bintegral/transform.hpp"

namespace bintegral {

Mode parse_mode(std::string_view text) {
  if (text == "generic-exact") return Mode::GenericExact;
  if (text == "generic-float") return Mode::GenericFloat;
  if (text == "closed-form") return Mode::ClosedForm;
  throw InvalidOptions("unknown mode '" + std::string(text) + "'");
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::GenericExact: return "generic-exact";
    case Mode::GenericFloat: return "generic-float";
    case Mode::ClosedForm: return "closed-form";
  }
  return {};
}

TailCorrection parse_tail(std::string_view text) {
  if (text == "none") return TailCorrection::None;
  if (text == "p2" || text == "p-series") return TailCorrection::PSeries;
  throw InvalidOptions("unknown tail correction '" + std::string(text) + "'");
}

std::string to_string(TailCorrection tail) { return tail == TailCorrection::None ? "none" : "p2"; }

namespace {

constexpr std::size_t kDivergenceRun = 20;
constexpr std::size_t kStopRun = 3;
constexpr std::size_t kMinTailTerms = 1000;
constexpr double kTailFitTolerance = 0.01;

/// W_n from exact rationals, one Pascal row updated in place per step.
WeightedSumStream exact_stream(const CoefficientSource& src, long bits) {
  struct State {
    std::vector<mpz_class> row;
    std::vector<mpq_class> coeffs;
    mpq_class running;
    std::size_t n = 0;
  };
  auto state = std::make_shared<State>();
  return [state, &src, bits]() {
    auto& st = *state;
    const std::size_t n = st.n++;
    st.coeffs.push_back(src.exact(n).raw());
    st.row.emplace_back(1);
    for (std::size_t k = n; k-- > 1;) st.row[k] += st.row[k - 1];
    mpq_class b;
    mpq_class term;
    for (std::size_t k = 0; k <= n; ++k) {
      if (sgn(st.coeffs[k]) == 0) continue;
      term = st.coeffs[k];
      term *= st.row[k];
      b += term;
    }
    st.running += b;
    mpq_class w = st.running / static_cast<unsigned long>(n + 1);
    return to_bigfloat(Rational(std::move(w)), bits);
  };
}

WeightedSumStream float_stream(const CoefficientSource& src, std::size_t terms, long bits) {
  auto values = std::make_shared<std::vector<BigFloat>>(weighted_sums_float(src, terms - 1, bits));
  return [values, n = std::size_t{0}]() mutable { return (*values)[n++]; };
}

WeightedSumStream closed_stream(const CoefficientSource& src, long bits) {
  if (src.closed_weighted_sum_stream) return src.closed_weighted_sum_stream(bits);
  return [&src, bits, n = std::size_t{0}]() mutable { return to_bigfloat(src.closed_weighted_sum(n++), bits); };
}

void validate(const CoefficientSource& src, const EngineOptions& opts) {
  if (opts.max_terms == 0) throw InvalidOptions("max_terms must be positive");
  if (opts.precision_bits < 53) throw InvalidOptions("precision_bits must be at least 53");
  if (opts.stop_rel_tol < 0.0) throw InvalidOptions("stop_rel_tol must be non-negative");
  if (opts.mode == Mode::ClosedForm && !src.has_closed_form()) {
    throw InvalidOptions("closed-form mode needs a source with a closed weighted sum ('" + src.name + "' has none)");
  }
  if (!src.exact && opts.mode != Mode::ClosedForm) throw InvalidOptions("source has no coefficients");
}

long working_bits(const EngineOptions& opts) {
  if (opts.mode == Mode::GenericFloat) return std::max(opts.precision_bits, cancellation_safe_bits(opts.max_terms));
  return opts.precision_bits;
}

WeightedSumStream make_stream(const CoefficientSource& src, const EngineOptions& opts, long bits) {
  switch (opts.mode) {
    case Mode::GenericExact: return exact_stream(src, bits);
    case Mode::GenericFloat: return float_stream(src, opts.max_terms, bits);
    case Mode::ClosedForm: return closed_stream(src, bits);
  }
  return {};
}

struct TailFit {
  double log_coefficient = 0.0;
  double constant = 0.0;
};

/// Fits c(n) = A log(n+1) + B through n = hi and n = lo, accepting it if it
/// predicts c at n = mid within 1%. A constant c within 1% over the decade
/// gives the pure p-series model A = 0, B = c(hi).
std::optional<TailFit> fit_tail(const std::vector<double>& c, std::size_t lo, std::size_t mid, std::size_t hi) {
  const double chi = c[hi];
  const double clo = c[lo];
  const double cmid = c[mid];
  if (!std::isfinite(chi) || !std::isfinite(clo) || chi == 0.0) return std::nullopt;
  if (std::abs(chi - clo) <= kTailFitTolerance * std::abs(chi)) return TailFit{0.0, chi};
  const double lhi = std::log(static_cast<double>(hi) + 1.0);
  const double llo = std::log(static_cast<double>(lo) + 1.0);
  const double a = (chi - clo) / (lhi - llo);
  const double b = chi - a * lhi;
  const double predicted = a * std::log(static_cast<double>(mid) + 1.0) + b;
  if (std::abs(predicted - cmid) > kTailFitTolerance * std::abs(cmid)) return std::nullopt;
  return TailFit{a, b};
}

/// sum_{m >= N+1} (A log m + B) / m^2 ~ integral from N + 1/2 of the same.
BigFloat model_tail(const TailFit& fit, std::size_t terms, long bits) {
  BigFloat x = BigFloat::from_long(static_cast<long>(2 * terms + 1), bits) / 2;
  BigFloat a = BigFloat::from_double(fit.log_coefficient, bits);
  BigFloat b = BigFloat::from_double(fit.constant, bits);
  return (a * log(x) + a + b) / x;
}

using TermWeight = std::function<BigFloat(std::size_t n)>;

IntegralResult run_series(WeightedSumStream next, const EngineOptions& opts, long bits, const TermWeight& weight,
                          const BigFloat& rho, bool infinite, bool collect_tail_samples) {
  IntegralResult out;
  out.working_bits = bits;
  out.value = BigFloat(bits);
  out.error_estimate = BigFloat(bits);

  const BigFloat tol = opts.stop_rel_tol > 0.0 ? BigFloat::from_double(opts.stop_rel_tol, bits) : exp2(-bits, bits);
  std::vector<double> tail_samples;
  if (collect_tail_samples) tail_samples.reserve(opts.max_terms);

  BigFloat prev_mag(bits);
  BigFloat last_term(bits);
  std::size_t growing = 0;
  std::size_t quiet = 0;
  for (std::size_t n = 0; n < opts.max_terms; ++n) {
    const BigFloat w = next();
    BigFloat term = weight(n) * w;
    out.value += term;
    out.terms_used = n + 1;
    if (collect_tail_samples) {
      const double m = static_cast<double>(n) + 1.0;
      tail_samples.push_back(w.to_double() * m * m);
    }
    if (opts.keep_trace) out.trace.push_back({n, term, out.value});

    BigFloat mag = abs(term);
    growing = (n > 0 && mag > prev_mag) ? growing + 1 : 0;
    prev_mag = mag;
    last_term = std::move(term);
    if (growing >= kDivergenceRun) {
      out.diverged = true;
      out.error_estimate = BigFloat::infinity(bits);
      return out;
    }
    if (!infinite) {
      const bool small = !out.value.is_zero() && mag <= tol * abs(out.value);
      quiet = small ? quiet + 1 : 0;
      if (quiet >= kStopRun) break;
    }
  }

  if (!infinite) {
    // Geometric heuristic: |last| / (1 - rho).
    out.error_estimate = abs(last_term) / (BigFloat::from_long(1, bits) - rho);
    return out;
  }

  const std::size_t terms = out.terms_used;
  if (!collect_tail_samples || terms < kMinTailTerms) {
    out.error_estimate = abs(last_term);
    return out;
  }
  const std::size_t hi = terms - 1;
  const std::size_t lo = hi / 10;
  const std::size_t mid = static_cast<std::size_t>(static_cast<double>(hi) / std::sqrt(10.0));
  const auto fit = fit_tail(tail_samples, lo, mid, hi);
  if (!fit) {
    out.error_estimate = abs(last_term);
    return out;
  }
  const BigFloat tail = model_tail(*fit, terms, bits);
  if (opts.tail == TailCorrection::PSeries) {
    const auto coarse = fit_tail(tail_samples, hi / 100, hi / 10, hi);
    BigFloat spread = coarse ? abs(tail - model_tail(*coarse, terms, bits)) : abs(tail);
    out.value += tail;
    out.tail_added = tail;
    out.tail_log_coefficient = fit->log_coefficient;
    out.error_estimate = spread + abs(last_term);
  } else {
    out.error_estimate = abs(tail);
  }
  return out;
}

}  // namespace

IntegralResult integrate(const CoefficientSource& src, const EngineOptions& opts) {
  validate(src, opts);
  const long bits = working_bits(opts);
  const bool infinite = opts.lambda.is_infinite();
  const BigFloat rho = to_bigfloat(opts.lambda.rho(), bits);

  // rho^{n+1}, cached incrementally; the engine requests n in order.
  auto power = std::make_shared<std::vector<BigFloat>>();
  TermWeight weight = [rho, power, infinite, bits](std::size_t n) {
    if (infinite) return BigFloat::from_long(1, bits);
    while (power->size() <= n) power->push_back(power->empty() ? rho : power->back() * rho);
    return (*power)[n];
  };
  return run_series(make_stream(src, opts, bits), opts, bits, weight, rho, infinite,
                    infinite && opts.max_terms >= kMinTailTerms);
}

IntegralResult point_eval(const CoefficientSource& src, const EngineOptions& opts) {
  validate(src, opts);
  if (opts.lambda.is_infinite()) throw InvalidOptions("point_eval needs a finite lambda");
  const long bits = working_bits(opts);
  const Rational& lambda = opts.lambda.value();
  const BigFloat rho = to_bigfloat(opts.lambda.rho(), bits);
  const Rational lp1 = lambda + Rational(1);
  const BigFloat scale = to_bigfloat(Rational(1) / (lp1 * lp1), bits);

  // rho^n (n+1) / (lambda+1)^2, so that term_n = rho^n s_n / (lambda+1)^2.
  auto power = std::make_shared<std::vector<BigFloat>>();
  TermWeight weight = [rho, scale, power](std::size_t n) {
    while (power->size() <= n) power->push_back(power->empty() ? scale : power->back() * rho);
    return (*power)[n] * static_cast<long>(n + 1);
  };
  EngineOptions finite = opts;
  finite.tail = TailCorrection::None;
  return run_series(make_stream(src, opts, bits), finite, bits, weight, rho, false, false);
}

std::vector<TableRow> convergence_table(const CoefficientSource& src, const EngineOptions& opts,
                                        const std::optional<BigFloat>& reference, bool* diverged) {
  EngineOptions traced = opts;
  traced.keep_trace = true;
  traced.tail = TailCorrection::None;
  const IntegralResult result = integrate(src, traced);
  if (diverged) *diverged = result.diverged;
  std::vector<TableRow> rows;
  rows.reserve(result.trace.size());
  for (const auto& t : result.trace) {
    TableRow row{t.n, t.term, t.partial_sum, std::nullopt};
    if (reference) row.abs_err = abs(t.partial_sum - *reference);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace bintegral
