#include "bintegral/transform.hpp"

#include <random>

#include "bintegral/corpus.hpp"

namespace bintegral {

namespace {

/// sum_k row[k] * coeffs[k] over k <= min(n, coeffs.size()-1).
Rational binomial_dot(const std::vector<mpz_class>& row, const std::vector<mpq_class>& coeffs) {
  mpq_class acc;
  mpq_class term;
  const std::size_t upto = std::min(row.size(), coeffs.size());
  for (std::size_t k = 0; k < upto; ++k) {
    if (sgn(coeffs[k]) == 0) continue;
    term = coeffs[k];
    term *= row[k];
    acc += term;
  }
  return Rational(std::move(acc));
}

std::vector<mpq_class> exact_coefficients(std::size_t count, const std::function<Rational(std::size_t)>& f) {
  std::vector<mpq_class> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(f(k).raw());
  return out;
}

std::vector<mpq_class> divided_by_index_plus_one(std::vector<mpq_class> c) {
  for (std::size_t k = 0; k < c.size(); ++k) c[k] /= static_cast<unsigned long>(k + 1);
  return c;
}

Rational sign_of(std::size_t k) { return Rational(k % 2 == 0 ? 1 : -1); }

}  // namespace

std::vector<TransformRow> binomial_transform(const CoefficientSource& a, std::size_t n_max) {
  const auto coeffs = exact_coefficients(n_max + 1, a.exact);
  const auto weighted = divided_by_index_plus_one(coeffs);
  PascalTriangle pascal;
  std::vector<TransformRow> rows;
  rows.reserve(n_max + 1);
  Rational running;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const auto& row = pascal.row(n);
    TransformRow r;
    r.n = n;
    r.b = binomial_dot(row, coeffs);
    running += r.b;
    r.s = running;
    r.w = binomial_dot(row, weighted);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<Rational> binomial_transform(std::span<const Rational> a) {
  std::vector<mpq_class> coeffs;
  coeffs.reserve(a.size());
  for (const auto& x : a) coeffs.push_back(x.raw());
  PascalTriangle pascal;
  std::vector<Rational> b;
  b.reserve(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) b.push_back(binomial_dot(pascal.row(n), coeffs));
  return b;
}

std::vector<Rational> inverse_binomial_transform(std::span<const Rational> b) {
  PascalTriangle pascal;
  std::vector<Rational> a;
  a.reserve(b.size());
  for (std::size_t n = 0; n < b.size(); ++n) {
    const auto& row = pascal.row(n);
    mpq_class acc;
    mpq_class term;
    for (std::size_t k = 0; k <= n; ++k) {
      term = b[k].raw();
      term *= row[k];
      if ((n - k) % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    a.emplace_back(std::move(acc));
  }
  return a;
}

Rational weighted_sum(const CoefficientSource& a, std::size_t n) {
  const auto weighted = divided_by_index_plus_one(exact_coefficients(n + 1, a.exact));
  std::vector<mpz_class> row(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    mpz_bin_uiui(row[k].get_mpz_t(), n, k);
  }
  return binomial_dot(row, weighted);
}

std::vector<BigFloat> weighted_sums_float(const CoefficientSource& a, std::size_t n_max, long bits) {
  std::vector<BigFloat> weighted;
  weighted.reserve(n_max + 1);
  for (std::size_t k = 0; k <= n_max; ++k) {
    weighted.push_back(a.coefficient(k, bits) / static_cast<long>(k + 1));
  }
  PascalTriangle pascal;
  std::vector<BigFloat> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const auto& row = pascal.row(n);
    BigFloat acc(bits);
    for (std::size_t k = 0; k <= n; ++k) {
      acc += to_bigfloat(Rational(row[k]), bits) * weighted[k];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

EulerCheck euler_transform_check(const CoefficientSource& a, const Rational& t, std::size_t terms, long bits) {
  if (t.sign() < 0 || t >= Rational(1)) throw std::domain_error("euler_transform_check: need 0 <= t < 1");
  const Rational one(1);
  const Rational x = t / (one - t);

  EulerCheck out{BigFloat(bits), BigFloat(bits), 0};

  // lhs: direct Taylor summation of f at x = t/(1-t).
  const BigFloat xf = to_bigfloat(x, bits);
  const BigFloat threshold = exp2(-(bits + 8), bits);
  BigFloat power = BigFloat::from_long(1, bits);
  BigFloat taylor(bits);
  const std::size_t cap = 64 * (terms + static_cast<std::size_t>(bits));
  std::size_t quiet = 0;
  std::size_t k = 0;
  for (; k < cap && quiet < 5; ++k) {
    const BigFloat term = a.coefficient(k, bits) * power;
    taylor += term;
    quiet = abs(term) < threshold ? quiet + 1 : 0;
    power *= xf;
  }
  out.taylor_terms = k;
  out.lhs = taylor / to_bigfloat(one - t, bits);

  // rhs: sum of b_n t^n from the exact transform.
  const auto coeffs = exact_coefficients(terms + 1, a.exact);
  PascalTriangle pascal;
  const BigFloat tf = to_bigfloat(t, bits);
  BigFloat tpow = BigFloat::from_long(1, bits);
  for (std::size_t n = 0; n <= terms; ++n) {
    out.rhs += to_bigfloat(binomial_dot(pascal.row(n), coeffs), bits) * tpow;
    tpow *= tf;
  }
  return out;
}

std::vector<Rational> random_rationals(std::size_t count, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 12);
  std::vector<Rational> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(num(rng), den(rng));
  return out;
}

std::vector<IdentityReport> run_identity_suite(std::size_t n_max) {
  const std::size_t len = n_max + 1;
  std::vector<IdentityReport> reports;
  auto report = [&reports](std::string id, std::size_t n, Rational lhs, Rational rhs) {
    const bool pass = lhs == rhs;
    reports.push_back({std::move(id), n, std::move(lhs), std::move(rhs), pass});
  };

  // Coefficient vectors c_k such that lhs(n) = sum_k C(n,k) c_k.
  const auto i1 = exact_coefficients(len, [](std::size_t k) {
    return sign_of(k) * harmonic(k + 1) / Rational(static_cast<long>(k) + 1);
  });
  const auto i2 = exact_coefficients(len, [](std::size_t k) {
    const long kk = static_cast<long>(k);
    return sign_of(k) * harmonic(k + 1) / Rational((kk + 1) * (kk + 2));
  });
  const auto i3 = exact_coefficients(len, [](std::size_t k) {
    if (k == 0) return Rational(0);  // the first sum starts at k = 1; H_0 = 0 kills the second
    const long kk = static_cast<long>(k);
    const Rational s = -sign_of(k) * harmonic(k);
    return s / Rational(kk) - s / Rational(kk + 1);
  });
  const auto i4 = exact_coefficients(len, [](std::size_t k) {
    return -sign_of(k) * harmonic(k) / Rational(static_cast<long>(k) + 1);
  });
  constexpr long kMaxQ = 6;
  std::vector<std::vector<mpq_class>> i5;
  for (long q = 1; q <= kMaxQ; ++q) {
    i5.push_back(exact_coefficients(len, [q](std::size_t k) {
      const long kk = static_cast<long>(k);
      return binomial(kk, q) * sign_of(k) / Rational(kk + 1);
    }));
  }
  const auto random_a = random_rationals(len, kIdentitySuiteSeed);
  std::vector<mpq_class> i6_b;
  for (const auto& r : random_a) i6_b.push_back(r.raw());
  const auto i6_w = divided_by_index_plus_one(i6_b);

  const auto entries = corpus::all(kMaxQ);
  std::vector<std::vector<mpq_class>> i8;
  for (const auto& e : entries) {
    i8.push_back(divided_by_index_plus_one(exact_coefficients(len, e.source.exact)));
  }

  PascalTriangle pascal;
  Rational i6_running;
  Rational i7_running;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const auto& row = pascal.row(n);
    const long m = static_cast<long>(n) + 1;
    const Rational hn = harmonic(n);
    const Rational h2n = harmonic2(n);

    report("I1", n, binomial_dot(row, i1), Rational(1, m * m));
    report("I2", n, binomial_dot(row, i2), Rational(1, m * m) + (hn - Rational(1)) / Rational(m * (m + 1)));
    report("I3", n, binomial_dot(row, i3), h2n - hn / Rational(m));
    report("I4", n, binomial_dot(row, i4), hn / Rational(m));
    for (long q = 1; q <= kMaxQ; ++q) {
      const long nn = static_cast<long>(n);
      Rational rhs = nn >= q ? Rational(q % 2 == 0 ? 1 : -1, m) : Rational(0);
      report("I5[q=" + std::to_string(q) + "]", n, binomial_dot(row, i5[static_cast<std::size_t>(q - 1)]),
             std::move(rhs));
    }
    i6_running += binomial_dot(row, i6_b);
    report("I6", n, binomial_dot(row, i6_w), i6_running / Rational(m));

    i7_running += hn / Rational(m);
    report("I7", n, i7_running, (hn * hn - h2n) / Rational(2) + hn / Rational(m));

    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      const std::string tag = e.id == "ex4" ? "ex4(q=" + std::to_string(e.q) + ")" : e.id;
      report("I8[" + tag + "]", n, binomial_dot(row, i8[i]), e.source.closed_weighted_sum(n));
    }
  }
  return reports;
}

}  // namespace bintegral
