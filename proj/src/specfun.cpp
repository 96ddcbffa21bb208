#include "bintegral/specfun.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bintegral::specfun {

namespace {

constexpr long kGuardBits = 32;

/// Per-precision memo. Values are computed at bits + kGuardBits and rounded.
class ConstantCache {
 public:
  explicit ConstantCache(std::function<BigFloat(long)> compute) : compute_(std::move(compute)) {}

  BigFloat get(long bits) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = values_.find(bits); it != values_.end()) return it->second;
    }
    BigFloat value = compute_(bits + kGuardBits).rounded(bits);
    std::lock_guard lock(mutex_);
    return values_.emplace(bits, std::move(value)).first->second;
  }

 private:
  std::function<BigFloat(long)> compute_;
  std::mutex mutex_;
  std::map<long, BigFloat> values_;
};

/// True once |term| has fallen below 2^-bits relative to |sum|.
bool negligible(const BigFloat& term, const BigFloat& sum, long bits) {
  if (term.is_zero()) return true;
  if (sum.is_zero()) return false;
  return term.exponent() < sum.exponent() - bits - 2;
}

/// atan(1/m) = sum (-1)^k / ((2k+1) m^{2k+1}).
BigFloat atan_inverse(long m, long bits) {
  BigFloat power = BigFloat::from_long(1, bits) / m;
  const long m2 = m * m;
  BigFloat sum(bits);
  for (long k = 0;; ++k) {
    BigFloat term = power / (2 * k + 1);
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    if (negligible(term, sum, bits)) break;
    power /= m2;
  }
  return sum;
}

BigFloat compute_pi(long bits) {
  // Machin: pi = 16 atan(1/5) - 4 atan(1/239).
  return atan_inverse(5, bits) * 16 - atan_inverse(239, bits) * 4;
}

BigFloat compute_log2(long bits) {
  // log 2 = 2 atanh(1/3) = 2 sum 3^{-(2k+1)} / (2k+1).
  BigFloat power = BigFloat::from_long(1, bits) / 3;
  BigFloat sum(bits);
  for (long k = 0;; ++k) {
    BigFloat term = power / (2 * k + 1);
    sum += term;
    if (negligible(term, sum, bits)) break;
    power /= 9;
  }
  return sum * 2;
}

BigFloat compute_zeta3(long bits) {
  // Apery: zeta(3) = 5/2 sum_{n>=1} (-1)^{n-1} / (n^3 C(2n, n)).
  mpz_class central = 2;  // C(2, 1)
  BigFloat sum(bits);
  for (long n = 1;; ++n) {
    BigFloat denom = BigFloat::from_rational(Rational(central), bits);
    denom *= n;
    denom *= n;
    denom *= n;
    BigFloat term = BigFloat::from_long(1, bits) / denom;
    if (n % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
    if (negligible(term, sum, bits)) break;
    central *= (2 * n + 1) * (2 * n + 2);
    central /= (n + 1) * (n + 1);
  }
  return sum * 5 / 2;
}

/// sum_{n>=1} x^n / n^order for |x| <= 1/2 (or any |x| < 1, slower).
BigFloat polylog_series(const BigFloat& x, int order, long bits) {
  BigFloat power = x.rounded(bits);
  BigFloat sum(bits);
  const BigFloat ax = abs(x);
  for (long n = 1;; ++n) {
    BigFloat term = power;
    for (int i = 0; i < order; ++i) term /= n;
    sum += term;
    // Remaining tail <= |term| |x| / (1 - |x|) because |x^n / n^s| decreases.
    BigFloat tail = abs(term) * ax / (BigFloat::from_long(1, bits) - ax);
    if (negligible(tail, sum, bits)) break;
    power *= x;
  }
  return sum;
}

ConstantCache& pi_cache() {
  static ConstantCache cache(compute_pi);
  return cache;
}

ConstantCache& log2_cache() {
  static ConstantCache cache(compute_log2);
  return cache;
}

ConstantCache& zeta3_cache() {
  static ConstantCache cache(compute_zeta3);
  return cache;
}

ConstantCache& li2_half_cache() {
  static ConstantCache cache([](long bits) {
    return polylog_series(BigFloat::from_long(1, bits) / 2, 2, bits);
  });
  return cache;
}

ConstantCache& li3_half_cache() {
  static ConstantCache cache([](long bits) {
    return polylog_series(BigFloat::from_long(1, bits) / 2, 3, bits);
  });
  return cache;
}

void check_polylog_domain(const BigFloat& x, const char* name) {
  if (!x.is_finite() || x <= BigFloat::from_long(-1, x.precision()) ||
      x > BigFloat::from_long(1, x.precision())) {
    throw std::domain_error(std::string(name) + ": argument outside (-1, 1]");
  }
}

}  // namespace

BigFloat pi(long bits) { return pi_cache().get(bits); }
BigFloat log2(long bits) { return log2_cache().get(bits); }
BigFloat zeta2(long bits) {
  const BigFloat p = pi(bits + kGuardBits);
  return (p * p / 6).rounded(bits);
}
BigFloat zeta3(long bits) { return zeta3_cache().get(bits); }
BigFloat li2_half(long bits) { return li2_half_cache().get(bits); }
BigFloat li3_half(long bits) { return li3_half_cache().get(bits); }

BigFloat li2(const BigFloat& x) {
  check_polylog_domain(x, "li2");
  const long bits = x.precision();
  const long wp = bits + kGuardBits;
  const BigFloat one = BigFloat::from_long(1, wp);
  const BigFloat half = one / 2;
  BigFloat xw = x.rounded(wp);
  BigFloat result(wp);
  if (xw.is_zero()) {
    return BigFloat(bits);
  } else if (xw == one) {
    result = zeta2(wp);
  } else if (xw > half) {
    const BigFloat y = one - xw;
    result = zeta2(wp) - log(xw) * log(y) - polylog_series(y, 2, wp);
  } else if (xw < -half) {
    const BigFloat y = xw / (xw - one);
    const BigFloat l = log(one - xw);
    result = -polylog_series(y, 2, wp) - l * l / 2;
  } else {
    result = polylog_series(xw, 2, wp);
  }
  return result.rounded(bits);
}

BigFloat li3(const BigFloat& x) {
  check_polylog_domain(x, "li3");
  const long bits = x.precision();
  const long wp = bits + kGuardBits;
  BigFloat xw = x.rounded(wp);
  if (xw.is_zero()) return BigFloat(bits);
  if (xw == BigFloat::from_long(1, wp)) return zeta3(bits);
  return polylog_series(xw, 3, wp).rounded(bits);
}

GfId parse_gf_id(std::string_view text) {
  static const std::map<std::string_view, GfId> ids{{"G1", GfId::G1}, {"G2", GfId::G2}, {"G3", GfId::G3},
                                                    {"G4", GfId::G4}, {"G5", GfId::G5}, {"G6", GfId::G6}};
  if (auto it = ids.find(text); it != ids.end()) return it->second;
  throw std::invalid_argument("unknown generating-function id '" + std::string(text) + "'");
}

std::string to_string(GfId id) { return "G" + std::to_string(static_cast<int>(id) + 1); }

std::string describe(GfId id) {
  switch (id) {
    case GfId::G1: return "sum H2_n x^n = Li2(x)/(1-x)";
    case GfId::G2: return "sum H_n x^n/(n+1) = log^2(1-x)/(2x)";
    case GfId::G3: return "sum (H_n^2 - H2_n) x^(n+1)/(n+1) = -log^3(1-x)/3";
    case GfId::G4: return "sum H_n x^(n+1)/(n+1)^2 = log x log^2(1-x)/2 + log(1-x) Li2(1-x) - Li3(1-x) + zeta(3)";
    case GfId::G5: return "sum H_n x^n = -log(1-x)/(1-x)";
    case GfId::G6: return "sum (-1)^k H_(k+1) x^k/(k+2) = log^2(1+x)/(2x^2)";
  }
  return {};
}

GfCheck gf_check(GfId id, const Rational& x, std::size_t terms, long bits) {
  const Rational ax = abs(x);
  if (x.is_zero() || ax > Rational(1, 2)) throw std::domain_error("gf_check: need 0 < |x| <= 1/2");
  if (id == GfId::G4 && x.sign() < 0) throw std::domain_error("gf_check G4: need x > 0");

  const long wp = bits + kGuardBits;
  const BigFloat xf = to_bigfloat(x, wp);
  const BigFloat one = BigFloat::from_long(1, wp);

  // Series side: harmonic numbers accumulated independently in floating point.
  BigFloat h(wp);   // H_n
  BigFloat h2(wp);  // H^(2)_n
  BigFloat power = one;  // x^n
  BigFloat series(wp);
  for (std::size_t n = 0; n < terms; ++n) {
    const long m = static_cast<long>(n) + 1;  // n + 1
    if (n > 0) {
      const long j = static_cast<long>(n);
      h += one / j;
      h2 += one / j / j;
    }
    switch (id) {
      case GfId::G1: series += h2 * power; break;
      case GfId::G2: series += h * power / m; break;
      case GfId::G3: series += (h * h - h2) * power * xf / m; break;
      case GfId::G4: series += h * power * xf / m / m; break;
      case GfId::G5: series += h * power; break;
      case GfId::G6: {
        // H_{n+1} = H_n + 1/(n+1)
        BigFloat term = (h + one / m) * power / (m + 1);
        if (n % 2 == 0) {
          series += term;
        } else {
          series -= term;
        }
        break;
      }
    }
    power *= xf;
  }

  // Closed side.
  BigFloat closed(wp);
  const BigFloat l1 = log(one - xf);  // log(1-x)
  switch (id) {
    case GfId::G1: closed = li2(xf) / (one - xf); break;
    case GfId::G2: closed = l1 * l1 / (xf * 2); break;
    case GfId::G3: closed = -(l1 * l1 * l1) / 3; break;
    case GfId::G4: {
      const BigFloat y = one - xf;
      closed = log(xf) * l1 * l1 / 2 + l1 * li2(y) - li3(y) + zeta3(wp);
      break;
    }
    case GfId::G5: closed = -l1 / (one - xf); break;
    case GfId::G6: {
      const BigFloat lp = log1p(xf);
      closed = lp * lp / (xf * xf * 2);
      break;
    }
  }

  // Every coefficient is at most (n+1)^2 in magnitude, so the tail after
  // `terms` terms is below (N+2)^2 |x|^{N+1} / (1-|x|)^3.
  const BigFloat axf = to_bigfloat(ax, wp);
  const BigFloat gap = one - axf;
  BigFloat tail = pow(axf, static_cast<long>(terms) + 1);
  tail *= static_cast<long>(terms) + 2;
  tail *= static_cast<long>(terms) + 2;
  tail /= gap * gap * gap;
  if (id == GfId::G6) tail /= axf;
  BigFloat slack = exp2(16 - bits, wp) * (one + abs(closed));

  return GfCheck{series.rounded(bits), closed.rounded(bits), (tail + slack).rounded(bits)};
}

}  // namespace bintegral::specfun
