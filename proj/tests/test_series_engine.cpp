#include <doctest.h>

#include <cmath>
#include <memory>

#include "bintegral/corpus.hpp"
#include "bintegral/series_engine.hpp"
#include "bintegral/specfun.hpp"
#include "bintegral/transform.hpp"

using namespace bintegral;

namespace {

CoefficientSource explicit_source(std::vector<Rational> coeffs) {
  return make_source(ExplicitCoefficients{"test", std::move(coeffs)});
}

CoefficientSource geometric(const char* r) { return make_source(GeneratorSpec{"geometric", {{"r", r}}}); }

EngineOptions at_lambda(const Rational& lambda, std::size_t terms = 200) {
  EngineOptions opts;
  opts.lambda = Lambda::finite(lambda);
  opts.max_terms = terms;
  return opts;
}

double diff(const BigFloat& a, const BigFloat& b) { return std::abs((a - b).to_double()); }

}  // namespace

TEST_CASE("integrate: constant integrand on [0, 1]") {
  const auto result = integrate(explicit_source({Rational(1)}), at_lambda(Rational(1)));
  CHECK(diff(result.value, BigFloat::from_long(1, 128)) < 1e-30);
  CHECK(!result.diverged);
  CHECK(result.terms_used < 200);
  CHECK(result.working_bits == 128);
}

TEST_CASE("integrate: finite-lambda corpus entries") {
  SUBCASE("ex5, generic exact, 200 terms") {
    const auto entry = corpus::get("ex5");
    const auto result = integrate(entry.source, at_lambda(Rational(1)));
    CHECK(diff(result.value, specfun::zeta3(128) / 8) < 1e-10);
  }
  SUBCASE("ex4 q = 1") {
    const auto entry = corpus::get("ex4", 1);
    const auto result = integrate(entry.source, at_lambda(Rational(1), 128));
    CHECK(result.value.to_double() == doctest::Approx(-0.1931471806).epsilon(1e-10));
    CHECK(diff(result.value, entry.reference.evaluate(128)) < 1e-12);
  }
  SUBCASE("ex3 in every mode") {
    const auto entry = corpus::get("ex3");
    const BigFloat ref = entry.reference.evaluate(128);
    for (Mode mode : {Mode::GenericExact, Mode::GenericFloat, Mode::ClosedForm}) {
      CAPTURE(to_string(mode));
      auto opts = at_lambda(Rational(1));
      opts.mode = mode;
      const auto result = integrate(entry.source, opts);
      CHECK(diff(result.value, ref) < 1e-12);
      CHECK(result.error_estimate.to_double() < 1e-12);
    }
  }
}

TEST_CASE("integrate: ex1 at infinity with the p-series tail") {
  const auto entry = corpus::get("ex1");
  EngineOptions opts;
  opts.lambda = Lambda::infinite();
  opts.mode = Mode::ClosedForm;
  opts.max_terms = 10000;

  opts.tail = TailCorrection::None;
  const auto plain = integrate(entry.source, opts);
  const double plain_err = diff(plain.value, specfun::zeta2(128));
  CHECK(plain_err <= 2e-4);
  CHECK(!plain.tail_added);

  opts.tail = TailCorrection::PSeries;
  const auto corrected = integrate(entry.source, opts);
  const double corrected_err = diff(corrected.value, specfun::zeta2(128));
  CHECK(corrected.tail_added);
  CHECK(corrected.tail_log_coefficient.value() == 0.0);
  CHECK(corrected_err * 1e3 <= plain_err);
  CHECK(corrected.error_estimate.to_double() >= corrected_err);
}

TEST_CASE("integrate: generic-exact and closed-form terms agree") {
  for (const auto& entry : corpus::all(3)) {
    if (entry.lambda.is_infinite()) continue;
    CAPTURE(entry.source.name);
    auto opts = at_lambda(Rational(1), 120);
    opts.keep_trace = true;
    opts.stop_rel_tol = 1e-300;
    opts.mode = Mode::GenericExact;
    const auto exact = integrate(entry.source, opts);
    opts.mode = Mode::ClosedForm;
    const auto closed = integrate(entry.source, opts);
    REQUIRE(exact.trace.size() == closed.trace.size());
    for (std::size_t n = 0; n < exact.trace.size(); ++n) {
      const auto& a = exact.trace[n].term;
      const auto& b = closed.trace[n].term;
      if (a.is_zero() || b.is_zero()) {
        CHECK(a.is_zero() == b.is_zero());
      } else {
        CHECK(agreeing_bits(a, b) >= 100);
      }
    }
  }
}

TEST_CASE("integrate: finite-lambda terms decay geometrically") {
  for (const auto& entry : corpus::all(5)) {
    if (entry.lambda.is_infinite()) continue;
    CAPTURE(entry.source.name);
    auto opts = at_lambda(Rational(1), 150);
    opts.keep_trace = true;
    opts.mode = Mode::ClosedForm;
    opts.stop_rel_tol = 1e-300;
    const auto result = integrate(entry.source, opts);
    const double rho = 0.5;
    for (std::size_t n = 20; n + 1 < result.trace.size(); ++n) {
      const double a = std::abs(result.trace[n].term.to_double());
      const double b = std::abs(result.trace[n + 1].term.to_double());
      if (a == 0.0) continue;
      CHECK(b / a < rho + 0.1);
    }
  }
}

TEST_CASE("generic-float mode raises the working precision") {
  auto opts = at_lambda(Rational(1), 300);
  opts.mode = Mode::GenericFloat;
  const auto result = integrate(corpus::get("ex5").source, opts);
  CHECK(result.working_bits == cancellation_safe_bits(300));
  CHECK(result.working_bits == 364);
  CHECK(diff(result.value, specfun::zeta3(128) / 8) < 1e-10);
}

TEST_CASE("generic-float mode agrees with generic-exact mode to 50 bits at n_max = 200") {
  for (const auto& entry : corpus::all(5)) {
    CAPTURE(entry.source.name);
    EngineOptions opts;
    opts.lambda = entry.lambda;
    opts.max_terms = 200;
    opts.mode = Mode::GenericFloat;
    const auto fl = integrate(entry.source, opts);
    REQUIRE(fl.working_bits == cancellation_safe_bits(200));
    opts.mode = Mode::GenericExact;
    opts.precision_bits = fl.working_bits;
    const auto ex = integrate(entry.source, opts);
    CHECK(fl.terms_used == ex.terms_used);
    CHECK(agreeing_bits(fl.value, ex.value) >= 50);
  }
}

TEST_CASE("per-term cancellation grows with the coefficient size") {
  // ex1 has |a_k| ~ log k, so n + 64 bits keep every W_n to 50 bits; ex4 with
  // a_k = C(k,q) loses about q log2(n) further bits at large n.
  const std::size_t n_max = 200;
  const auto ex1 = corpus::get("ex1").source;
  const auto rows = binomial_transform(ex1, n_max);
  const auto w = weighted_sums_float(ex1, n_max, cancellation_safe_bits(n_max));
  for (std::size_t n = 0; n <= n_max; ++n) CHECK(agreeing_bits(w[n], to_bigfloat(rows[n].w, 512)) >= 50);

  const auto ex4 = corpus::get("ex4", 5).source;
  const auto w4 = weighted_sums_float(ex4, n_max, cancellation_safe_bits(n_max));
  const BigFloat last = to_bigfloat(ex4.closed_weighted_sum(n_max), 512);
  CHECK(agreeing_bits(w4[n_max], last) < 50);
  const auto w4_wide = weighted_sums_float(ex4, n_max, cancellation_safe_bits(n_max) + 64);
  CHECK(agreeing_bits(w4_wide[n_max], last) >= 50);
}

TEST_CASE("point_eval") {
  SUBCASE("1/(1+x) at several lambdas") {
    const auto src = geometric("-1");
    for (const Rational& lambda : {Rational(1, 2), Rational(1), Rational(2)}) {
      CAPTURE(lambda.to_string());
      const auto result = point_eval(src, at_lambda(lambda));
      CHECK(diff(result.value, to_bigfloat(Rational(1) / (lambda + Rational(1)), 128)) < 1e-12);
    }
  }
  SUBCASE("f(x) = x at 1/2") {
    const auto result = point_eval(explicit_source({Rational(0), Rational(1)}), at_lambda(Rational(1, 2)));
    CHECK(diff(result.value, to_bigfloat(Rational(1, 2), 128)) < 1e-12);
  }
  SUBCASE("lambda = infinity is rejected") {
    EngineOptions opts;
    opts.lambda = Lambda::infinite();
    CHECK_THROWS_AS(point_eval(geometric("-1"), opts), InvalidOptions);
  }
}

TEST_CASE("convergence table") {
  SUBCASE("constant integrand: partial sums 1/2, 3/4, 7/8, 15/16") {
    auto opts = at_lambda(Rational(1), 4);
    const auto rows = convergence_table(explicit_source({Rational(1)}), opts);
    REQUIRE(rows.size() == 4);
    const Rational expected[] = {Rational(1, 2), Rational(3, 4), Rational(7, 8), Rational(15, 16)};
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(rows[i].n == i);
      CHECK(rows[i].partial_sum == to_bigfloat(expected[i], 128));
      CHECK(!rows[i].abs_err);
    }
  }
  SUBCASE("ex1 closed form at infinity: terms 1, 1/4, 1/9") {
    EngineOptions opts;
    opts.lambda = Lambda::infinite();
    opts.mode = Mode::ClosedForm;
    opts.max_terms = 3;
    const auto rows = convergence_table(corpus::get("ex1").source, opts);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].term == BigFloat::from_long(1, 128));
    CHECK(rows[1].term == to_bigfloat(Rational(1, 4), 128));
    CHECK(rows[2].term == to_bigfloat(Rational(1, 9), 128));
  }
  SUBCASE("ex3: errors shrink and rows match the trace") {
    const auto entry = corpus::get("ex3");
    auto opts = at_lambda(Rational(1), 8);
    const BigFloat ref = entry.reference.evaluate(128);
    const auto rows = convergence_table(entry.source, opts, ref);
    REQUIRE(rows.size() == 8);
    for (std::size_t i = 3; i < rows.size(); ++i) CHECK(*rows[i].abs_err < *rows[i - 1].abs_err);
    opts.keep_trace = true;
    const auto result = integrate(entry.source, opts);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].term == result.trace[i].term);
      CHECK(rows[i].partial_sum == result.trace[i].partial_sum);
    }
  }
}

TEST_CASE("divergence is flagged") {
  const auto src = geometric("3");
  const auto result = integrate(src, at_lambda(Rational(1)));
  CHECK(result.diverged);
  CHECK(!result.error_estimate.is_finite());
  CHECK(result.terms_used < 200);
  bool diverged = false;
  convergence_table(src, at_lambda(Rational(1)), std::nullopt, &diverged);
  CHECK(diverged);
}

TEST_CASE("stopping rule") {
  auto opts = at_lambda(Rational(1));
  opts.stop_rel_tol = 1e-10;
  const auto loose = integrate(corpus::get("ex5").source, opts);
  opts.stop_rel_tol = 0.0;
  const auto tight = integrate(corpus::get("ex5").source, opts);
  CHECK(loose.terms_used < tight.terms_used);
  CHECK(diff(loose.value, tight.value) < 1e-9);

  // ex4 with q = 5 starts with five zero terms; they must not stop the sum.
  const auto ex4 = corpus::get("ex4", 5);
  const auto result = integrate(ex4.source, at_lambda(Rational(1), 128));
  CHECK(result.terms_used > 10);
  CHECK(diff(result.value, ex4.reference.evaluate(128)) < 1e-12);
}

TEST_CASE("invalid options") {
  const auto list = explicit_source({Rational(1)});
  auto opts = at_lambda(Rational(1));
  opts.mode = Mode::ClosedForm;
  CHECK_THROWS_AS(integrate(list, opts), InvalidOptions);
  opts = at_lambda(Rational(1));
  opts.max_terms = 0;
  CHECK_THROWS_AS(integrate(list, opts), InvalidOptions);
  opts = at_lambda(Rational(1));
  opts.precision_bits = 20;
  CHECK_THROWS_AS(integrate(list, opts), InvalidOptions);
  opts = at_lambda(Rational(1));
  opts.stop_rel_tol = -1.0;
  CHECK_THROWS_AS(integrate(list, opts), InvalidOptions);
  CHECK_THROWS_AS(parse_mode("fast"), InvalidOptions);
  CHECK_THROWS_AS(parse_tail("p3"), InvalidOptions);
  CHECK(parse_mode(to_string(Mode::GenericFloat)) == Mode::GenericFloat);
  CHECK(parse_tail("p2") == TailCorrection::PSeries);
  CHECK_THROWS_AS(Lambda::finite(Rational(0)), std::invalid_argument);
}

TEST_CASE("exhausted harmonic tables surface as HarmonicCapError") {
  auto table = std::make_shared<HarmonicTable>(10);
  CoefficientSource src;
  src.name = "capped";
  src.exact = [table](std::size_t k) { return table->h(k + 1); };
  EngineOptions opts;
  opts.lambda = Lambda::infinite();
  opts.max_terms = 50;
  CHECK_THROWS_AS(integrate(src, opts), HarmonicCapError);
}
