#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bintegral/corpus.hpp"
#include "bintegral/quad_oracle.hpp"
#include "bintegral/specfun.hpp"

using namespace bintegral;
namespace q = bintegral::quad;

namespace {

BigFloat num(long n, long d = 1) { return to_bigfloat(Rational(n, d), 128); }

double diff(const BigFloat& a, const BigFloat& b) { return std::abs((a - b).to_double()); }

BigFloat one_like(const BigFloat& x) { return BigFloat::from_long(1, x.precision()); }

}  // namespace

TEST_CASE("finite intervals: reference integrals") {
  SUBCASE("x on [0, 1]") {
    const auto r = q::integrate_finite([](const BigFloat& x) { return x; }, num(0), num(1), 1e-12);
    CHECK(r.converged);
    CHECK(diff(r.value, num(1, 2)) < 1e-25);
  }
  SUBCASE("x/(1+x)^2 on [0, 1]") {
    const auto r = q::integrate_finite(
        [](const BigFloat& x) {
          const BigFloat d = one_like(x) + x;
          return x / (d * d);
        },
        num(0), num(1), 1e-12);
    CHECK(r.converged);
    CHECK(diff(r.value, specfun::log2(128) - num(1, 2)) < 1e-12);
  }
  SUBCASE("log^2(1+x)/(2x) on [0, 1]") {
    const auto r = q::integrate_finite(corpus::get("ex5").full_integrand, num(0), num(1), 1e-11);
    CHECK(r.converged);
    CHECK(diff(r.value, specfun::zeta3(128) / 8) < 1e-11);
  }
}

TEST_CASE("half line: reference integrals") {
  SUBCASE("log(1+t)/(t(1+t))") {
    const auto r = q::integrate_halfline(corpus::get("ex1").full_integrand, 1e-9);
    CHECK(r.converged);
    CHECK(diff(r.value, specfun::zeta2(128)) < 1e-9);
  }
  SUBCASE("(log(1+t)/t)^2") {
    const auto r = q::integrate_halfline(corpus::get("ex2").full_integrand, 1e-9);
    CHECK(r.converged);
    CHECK(diff(r.value, specfun::zeta2(128) * 2) < 1e-9);
  }
  SUBCASE("1/(1+t)^2") {
    const auto r = q::integrate_halfline(
        [](const BigFloat& t) {
          const BigFloat d = one_like(t) + t;
          return one_like(t) / (d * d);
        },
        1e-12);
    CHECK(r.converged);
    CHECK(diff(r.value, num(1)) < 1e-12);
  }
}

TEST_CASE("additivity over a split point") {
  const RealFunction g = corpus::get("ex5").full_integrand;
  const auto whole = q::integrate_finite(g, num(0), num(1), 1e-12);
  const auto left = q::integrate_finite(g, num(0), num(1, 3), 1e-12);
  const auto right = q::integrate_finite(g, num(1, 3), num(1), 1e-12);
  CHECK(diff(whole.value, left.value + right.value) < 3e-12);
}

TEST_CASE("half-line mapping matches a hand-substituted finite integral") {
  const RealFunction g = corpus::get("ex1").full_integrand;
  const auto mapped = q::integrate_halfline(g, 1e-10);
  const auto manual = q::integrate_finite(
      [g](const BigFloat& t) {
        const BigFloat s = one_like(t) - t;
        return g(t / s) / (s * s);
      },
      num(0), num(1), 1e-10);
  CHECK(diff(mapped.value, manual.value) < 1e-12);
}

TEST_CASE("endpoints are never evaluated") {
  const RealFunction guarded = [](const BigFloat& x) {
    if (x.is_zero() || x == one_like(x)) throw std::logic_error("endpoint evaluated");
    return log(x);
  };
  q::QuadResult r;
  CHECK_NOTHROW(r = q::integrate_finite(guarded, num(0), num(1), 1e-6));
  CHECK(r.value.to_double() == doctest::Approx(-1.0).epsilon(1e-5));
}

TEST_CASE("non-convergence is reported honestly") {
  SUBCASE("subdivision budget exhausted") {
    q::QuadOptions opts;
    opts.max_subdivisions = 2;
    const auto r = q::integrate_finite([](const BigFloat& x) { return log(x); }, num(0), num(1), 1e-12, opts);
    CHECK(!r.converged);
    CHECK(r.subdivisions <= 2);
    CHECK(r.abs_error_estimate.to_double() > 1e-12);
  }
  SUBCASE("tolerance below the working-precision floor") {
    CHECK(q::tolerance_floor(128) == std::ldexp(1.0, -40));
    const auto r = q::integrate_finite([](const BigFloat& x) { return x; }, num(0), num(1), 1e-20);
    CHECK(!r.converged);
    q::QuadOptions wide;
    wide.bits = 256;
    const auto w = q::integrate_finite([](const BigFloat& x) { return x; }, num(0), num(1), 1e-20, wide);
    CHECK(w.converged);
  }
}

TEST_CASE("argument validation") {
  const RealFunction id = [](const BigFloat& x) { return x; };
  CHECK_THROWS_AS(q::integrate_finite(id, num(1), num(0), 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(q::integrate_finite(id, num(0), num(1), 0.0), std::invalid_argument);
}
