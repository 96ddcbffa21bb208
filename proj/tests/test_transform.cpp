#include <doctest.h>

#include <map>
#include <random>
#include <stdexcept>

#include "bintegral/corpus.hpp"
#include "bintegral/transform.hpp"

using namespace bintegral;

namespace {

CoefficientSource explicit_source(std::vector<Rational> coeffs) {
  return make_source(ExplicitCoefficients{"test", std::move(coeffs)});
}

CoefficientSource constant_one() {
  CoefficientSource src;
  src.name = "ones";
  src.exact = [](std::size_t) { return Rational(1); };
  return src;
}

}  // namespace

TEST_CASE("binomial transform: delta and constant inputs") {
  const auto delta = binomial_transform(explicit_source({Rational(1)}), 20);
  for (const auto& row : delta) CHECK(row.b == Rational(1));

  const auto ones = binomial_transform(constant_one(), 20);
  Rational power(1);
  for (const auto& row : ones) {
    CHECK(row.b == power);
    power *= Rational(2);
  }
}

TEST_CASE("binomial transform: span overload and inverse") {
  const std::vector<Rational> a{Rational(1), Rational(0), Rational(0)};
  CHECK(binomial_transform(a) == std::vector<Rational>{Rational(1), Rational(1), Rational(1)});
  const std::vector<Rational> b{Rational(1), Rational(2), Rational(4)};
  CHECK(inverse_binomial_transform(b) == std::vector<Rational>{Rational(1), Rational(1), Rational(1)});
  CHECK(binomial_transform(std::vector<Rational>{}).empty());

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const auto len = std::uniform_int_distribution<std::size_t>(1, 100)(rng);
    const auto seq = random_rationals(len, rng());
    CHECK(inverse_binomial_transform(binomial_transform(seq)) == seq);
    CHECK(binomial_transform(inverse_binomial_transform(seq)) == seq);
  }
}

TEST_CASE("weighted sums: ex1 values and the running-sum invariant") {
  const auto ex1 = corpus::get("ex1");
  CHECK(weighted_sum(ex1.source, 0) == Rational(1));
  CHECK(weighted_sum(ex1.source, 1) == Rational(1, 4));
  CHECK(weighted_sum(ex1.source, 2) == Rational(1, 9));

  auto sources = std::vector<CoefficientSource>{};
  for (const auto& entry : corpus::all(5)) sources.push_back(entry.source);
  sources.push_back(make_source(GeneratorSpec{"geometric", {{"r", "-2/3"}}}));
  sources.push_back(explicit_source(random_rationals(40, 7)));
  for (const auto& src : sources) {
    CAPTURE(src.name);
    const auto rows = binomial_transform(src, 200);
    REQUIRE(rows.size() == 201);
    for (const auto& row : rows) {
      CHECK(row.w * Rational(static_cast<long>(row.n) + 1) == row.s);
    }
    CHECK(rows[37].w == weighted_sum(src, 37));
  }
}

TEST_CASE("weighted sums in floating point track the exact values at ample precision") {
  const auto ex3 = corpus::get("ex3");
  const auto rows = binomial_transform(ex3.source, 60);
  const auto w = weighted_sums_float(ex3.source, 60, 60 + 64);
  REQUIRE(w.size() == 61);
  for (std::size_t n = 0; n <= 60; ++n) {
    if (rows[n].w.is_zero()) {
      CHECK(w[n].to_double() == doctest::Approx(0.0));
    } else {
      CHECK(agreeing_bits(w[n], to_bigfloat(rows[n].w, 256)) >= 50);
    }
  }
}

TEST_CASE("Euler transform: both sides agree") {
  SUBCASE("a_k = 1 at t = 1/4") {
    const auto check = euler_transform_check(constant_one(), Rational(1, 4), 200, 128);
    CHECK(std::abs(check.lhs.to_double() - 2.0) < 1e-30);
    CHECK(abs(check.lhs - check.rhs) < exp2(-120, 128));
  }
  SUBCASE("delta at t = 1/3") {
    const auto check = euler_transform_check(explicit_source({Rational(1)}), Rational(1, 3), 200, 128);
    CHECK(abs(check.lhs - to_bigfloat(Rational(3, 2), 128)) < exp2(-120, 128));
    CHECK(abs(check.rhs - to_bigfloat(Rational(3, 2), 128)) < exp2(-120, 128));
  }
  SUBCASE("ex1 at t = 1/4") {
    const auto check = euler_transform_check(corpus::get("ex1").source, Rational(1, 4), 200, 320);
    CHECK(abs(check.lhs - check.rhs) < exp2(-100, 320));
    CHECK(check.taylor_terms > 0);
  }
  CHECK_THROWS_AS(euler_transform_check(constant_one(), Rational(1), 10, 128), std::domain_error);
}

TEST_CASE("identity suite: spot values") {
  const auto reports = run_identity_suite(4);
  std::map<std::pair<std::string, std::size_t>, IdentityReport> by_key;
  for (const auto& r : reports) by_key.emplace(std::make_pair(r.id, r.n), r);

  const auto& i1 = by_key.at({"I1", 2});
  CHECK(i1.lhs == Rational(1, 9));
  CHECK(i1.rhs == Rational(1, 9));

  const auto& i5 = by_key.at({"I5[q=2]", 1});
  CHECK(i5.lhs == Rational(0));
  CHECK(i5.rhs == Rational(0));
  CHECK(i5.pass);

  const auto& i7 = by_key.at({"I7", 1});
  CHECK(i7.lhs == Rational(1, 2));
  CHECK(i7.pass);

  CHECK(by_key.count({"I8[ex4(q=3)]", 4}) == 1);
  CHECK(by_key.count({"I6", 0}) == 1);
}

TEST_CASE("identity suite: every identity holds exactly for n <= 60") {
  const auto reports = run_identity_suite(60);
  // 4 plain identities + 6 values of q + I6 + I7 + 10 corpus entries, per n.
  CHECK(reports.size() == 61 * 22);
  for (const auto& r : reports) {
    CAPTURE(r.id);
    CAPTURE(r.n);
    CHECK(r.pass);
    CHECK(r.lhs == r.rhs);
  }
}

TEST_CASE("random rationals are reproducible") {
  CHECK(random_rationals(20, 3) == random_rationals(20, 3));
  CHECK(random_rationals(20, 3) != random_rationals(20, 4));
  for (const auto& r : random_rationals(200, kIdentitySuiteSeed)) {
    CHECK(abs(r.numerator()) <= 20);
    CHECK(r.denominator() <= 12);
  }
}
