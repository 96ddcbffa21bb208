#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bintegral/numeric.hpp"
#include "bintegral/sequences.hpp"

namespace bintegral {

/// One index of the binomial transform of a_k:
///   b_n = sum_k C(n,k) a_k,  s_n = b_0 + ... + b_n,
///   w_n = sum_k C(n,k) a_k / (k+1)  (= s_n / (n+1)).
struct TransformRow {
  std::size_t n = 0;
  Rational b;
  Rational s;
  Rational w;
};

/// Rows 0..n_max in exact arithmetic. b and w are computed as independent
/// binomial sums; s is the running sum of b.
std::vector<TransformRow> binomial_transform(const CoefficientSource& a, std::size_t n_max);

std::vector<Rational> binomial_transform(std::span<const Rational> a);
/// a_n = sum_k C(n,k) (-1)^{n-k} b_k.
std::vector<Rational> inverse_binomial_transform(std::span<const Rational> b);

/// W_n = sum_k C(n,k) a_k / (k+1), exactly.
Rational weighted_sum(const CoefficientSource& a, std::size_t n);

/// W_0..W_{n_max} with every product and sum rounded at `bits`. No precision
/// policy is applied here: at low precision the alternating binomial sums
/// lose about n bits to cancellation.
std::vector<BigFloat> weighted_sums_float(const CoefficientSource& a, std::size_t n_max, long bits);

/// Both sides of Euler's series transformation at t in [0, 1):
///   lhs = f(t/(1-t)) / (1-t) by direct Taylor summation of f,
///   rhs = sum_{n<=N} b_n t^n.
struct EulerCheck {
  BigFloat lhs;
  BigFloat rhs;
  std::size_t taylor_terms = 0;
};

/// t/(1-t) must lie inside the Taylor radius of f; the Taylor sum runs
/// until 5 consecutive terms fall below 2^-(bits+8) or 64 * (N + bits)
/// terms have been used.
EulerCheck euler_transform_check(const CoefficientSource& a, const Rational& t, std::size_t terms,
                                 long bits);

struct IdentityReport {
  std::string id;
  std::size_t n = 0;
  Rational lhs;
  Rational rhs;
  bool pass = false;
};

/// Exact check of every binomial-transform identity behind the worked
/// examples, for n = 0..n_max:
///   I1  sum C(n,k)(-1)^k H_{k+1}/(k+1)              = 1/(n+1)^2
///   I2  sum C(n,k)(-1)^k H_{k+1}/((k+1)(k+2))        = 1/(n+1)^2 + (H_n-1)/((n+1)(n+2))
///   I3  sum_{k>=1} C(n,k)(-1)^{k-1}H_k/k
///         - sum C(n,k)(-1)^{k-1}H_k/(k+1)            = H2_n - H_n/(n+1)
///   I4  sum C(n,k)(-1)^{k-1}H_k/(k+1)                = H_n/(n+1)
///   I5  sum C(n,k)C(k,q)(-1)^k/(k+1)                 = (-1)^q/(n+1) if n >= q, else 0;
///       q = 1..6, reported as "I5[q=..]"
///   I6  sum C(n,k)a_k/(k+1) = (1/(n+1)) sum_{m<=n} b_m for a seeded random a
///   I7  sum_{k<=n} H_k/(k+1)                         = (H_n^2 - H2_n)/2 + H_n/(n+1)
///   I8  W_n of each corpus entry = its registered closed form, "I8[ex..]"
std::vector<IdentityReport> run_identity_suite(std::size_t n_max);

/// Seed used for the random sequence in I6.
inline constexpr unsigned long kIdentitySuiteSeed = 0x5eed2024UL;

/// Seeded random rationals with small numerators/denominators.
std::vector<Rational> random_rationals(std::size_t count, unsigned long seed);

}  // namespace bintegral
