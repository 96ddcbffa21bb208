#include "bintegral/corpus.hpp"

#include <stdexcept>

#include "bintegral/specfun.hpp"

namespace bintegral::corpus {

namespace {

/// Wraps g so that g(0) returns the registered limit instead of 0/0.
RealFunction with_limit_at_zero(RealFunction g, Rational limit) {
  return [g = std::move(g), limit = std::move(limit)](const BigFloat& x) {
    if (x.is_zero()) return to_bigfloat(limit, x.precision());
    return g(x);
  };
}

BigFloat one(long bits) { return BigFloat::from_long(1, bits); }

/// Running H_n and H^(2)_n in floating point for the closed-form streams.
struct RunningHarmonics {
  explicit RunningHarmonics(long bits) : h(bits), h2(bits) {}
  /// Advances from n-1 to n (no-op for n = 0).
  void advance(long n) {
    if (n == 0) return;
    const BigFloat inv = one(h.precision()) / n;
    h += inv;
    h2 += inv / n;
  }
  BigFloat h;
  BigFloat h2;
};

CorpusEntry make_ex1() {
  CorpusEntry e;
  e.id = "ex1";
  e.source = make_source(GeneratorSpec{"ex1", {}});
  e.source.closed_weighted_sum = [](std::size_t n) {
    const long m = static_cast<long>(n) + 1;
    return Rational(1, m * m);
  };
  e.source.closed_weighted_sum_stream = [](long bits) -> WeightedSumStream {
    return [n = 0L, bits]() mutable {
      ++n;
      return one(bits) / n / n;
    };
  };
  e.full_integrand = with_limit_at_zero(
      [](const BigFloat& t) { return log1p(t) / (t * (one(t.precision()) + t)); }, Rational(1));
  e.full_integrand_text = "log(1+t)/(t(1+t))";
  e.source.integrand = e.full_integrand;
  e.lambda = Lambda::infinite();
  e.reference = {"pi^2/6", [](long bits) { return specfun::zeta2(bits); }};
  e.notes = "W_n = 1/(n+1)^2";
  return e;
}

CorpusEntry make_ex2() {
  CorpusEntry e;
  e.id = "ex2";
  e.source = make_source(GeneratorSpec{"ex2", {}});
  e.source.closed_weighted_sum = [](std::size_t n) {
    const long m = static_cast<long>(n) + 1;
    return Rational(1, m * m) + (harmonic(n) - Rational(1)) / Rational(m * (m + 1));
  };
  e.source.closed_weighted_sum_stream = [](long bits) -> WeightedSumStream {
    return [n = 0L, hs = RunningHarmonics(bits), bits]() mutable {
      hs.advance(n);
      const long m = n + 1;
      BigFloat w = one(bits) / m / m + (hs.h - one(bits)) / m / (m + 1);
      ++n;
      return w;
    };
  };
  e.full_integrand = with_limit_at_zero(
      [](const BigFloat& t) {
        const BigFloat r = log1p(t) / t;
        return r * r;
      },
      Rational(1));
  e.full_integrand_text = "(log(1+t)/t)^2";
  e.integral_scale = 2;
  // The coefficients are those of log^2(1+t)/(2t^2), i.e. the full integrand
  // divided by integral_scale. This is the only place that factor appears.
  e.source.integrand = [full = e.full_integrand, scale = e.integral_scale](const BigFloat& t) {
    return full(t) / scale;
  };
  e.lambda = Lambda::infinite();
  e.reference = {"pi^2/6", [](long bits) { return specfun::zeta2(bits); }};
  e.notes = "series evaluates log^2(1+t)/(2t^2); full integral (log(1+t)/t)^2 is twice the series value, pi^2/3";
  return e;
}

CorpusEntry make_ex3() {
  CorpusEntry e;
  e.id = "ex3";
  e.source = make_source(GeneratorSpec{"ex3", {}});
  e.source.closed_weighted_sum = [](std::size_t n) {
    return harmonic2(n) - harmonic(n) / Rational(static_cast<long>(n) + 1);
  };
  e.source.closed_weighted_sum_stream = [](long bits) -> WeightedSumStream {
    return [n = 0L, hs = RunningHarmonics(bits)]() mutable {
      hs.advance(n);
      BigFloat w = hs.h2 - hs.h / (n + 1);
      ++n;
      return w;
    };
  };
  e.full_integrand = [](const BigFloat& t) {
    return specfun::li2(t / (one(t.precision()) + t));
  };
  e.full_integrand_text = "Li2(t/(1+t))";
  e.source.integrand = e.full_integrand;
  e.lambda = Lambda::finite(Rational(1));
  e.reference = {"pi^2/12 - log(2)^2", [](long bits) {
                   const long wp = bits + 32;
                   const BigFloat l = specfun::log2(wp);
                   return (specfun::zeta2(wp) / 2 - l * l).rounded(bits);
                 }};
  e.notes = "a_0 = 0; W_n = H2_n - H_n/(n+1)";
  return e;
}

CorpusEntry make_ex4(long q) {
  if (q < 1) throw std::invalid_argument("ex4 requires q >= 1");
  CorpusEntry e;
  e.id = "ex4";
  e.q = q;
  e.source = make_source(GeneratorSpec{"ex4", {{"q", std::to_string(q)}}});
  const long sign = q % 2 == 0 ? 1 : -1;
  e.source.closed_weighted_sum = [q, sign](std::size_t n) {
    const long nn = static_cast<long>(n);
    return nn >= q ? Rational(sign, nn + 1) : Rational(0);
  };
  e.source.closed_weighted_sum_stream = [q, sign](long bits) -> WeightedSumStream {
    return [n = 0L, q, sign, bits]() mutable {
      BigFloat w = n >= q ? BigFloat::from_long(sign, bits) / (n + 1) : BigFloat(bits);
      ++n;
      return w;
    };
  };
  e.full_integrand = [q, sign](const BigFloat& x) {
    const BigFloat base = one(x.precision()) + x;
    return pow(x, q) / pow(base, q + 1) * sign;
  };
  e.full_integrand_text = "(-1)^q x^q/(1+x)^(q+1)";
  e.source.integrand = e.full_integrand;
  e.lambda = Lambda::finite(Rational(1));
  e.reference = {"(-1)^q (log 2 - sum_{n=1}^q 1/(2^n n))", [q, sign](long bits) {
                   const long wp = bits + 32;
                   BigFloat partial(wp);
                   for (long n = 1; n <= q; ++n) partial += exp2(-n, wp) / n;
                   return ((specfun::log2(wp) - partial) * sign).rounded(bits);
                 }};
  e.notes = "W_n = (-1)^q/(n+1) for n >= q, else 0; f carries the (-1)^q factor";
  return e;
}

CorpusEntry make_ex5() {
  CorpusEntry e;
  e.id = "ex5";
  e.source = make_source(GeneratorSpec{"ex5", {}});
  e.source.closed_weighted_sum = [](std::size_t n) {
    const Rational h = harmonic(n);
    const Rational m(static_cast<long>(n) + 1);
    const Rational inner = (h * h - harmonic2(n)) / Rational(2) + h / m;
    return inner / m;
  };
  e.source.closed_weighted_sum_stream = [](long bits) -> WeightedSumStream {
    return [n = 0L, hs = RunningHarmonics(bits)]() mutable {
      hs.advance(n);
      const long m = n + 1;
      BigFloat inner = (hs.h * hs.h - hs.h2) / 2 + hs.h / m;
      ++n;
      return inner / m;
    };
  };
  e.full_integrand = with_limit_at_zero(
      [](const BigFloat& x) {
        const BigFloat l = log1p(x);
        return l * l / (x * 2);
      },
      Rational(0));
  e.full_integrand_text = "log^2(1+x)/(2x)";
  e.source.integrand = e.full_integrand;
  e.lambda = Lambda::finite(Rational(1));
  e.reference = {"zeta(3)/8", [](long bits) { return specfun::zeta3(bits) / 8; }};
  e.notes = "W_n = (1/(n+1)) sum_{k<=n} H_k/(k+1) = ((H_n^2 - H2_n)/2 + H_n/(n+1))/(n+1)";
  return e;
}

}  // namespace

std::vector<std::string> ids() { return {"ex1", "ex2", "ex3", "ex4", "ex5"}; }

CorpusEntry get(std::string_view id, std::optional<long> q) {
  if (id == "ex1") return make_ex1();
  if (id == "ex2") return make_ex2();
  if (id == "ex3") return make_ex3();
  if (id == "ex4") return make_ex4(q.value_or(1));
  if (id == "ex5") return make_ex5();
  throw std::invalid_argument("unknown corpus entry '" + std::string(id) + "'");
}

std::vector<CorpusEntry> all(long max_q) {
  std::vector<CorpusEntry> out{make_ex1(), make_ex2(), make_ex3()};
  for (long q = 1; q <= max_q; ++q) out.push_back(make_ex4(q));
  out.push_back(make_ex5());
  return out;
}

BigFloat check_example2_zero_sum(std::size_t terms_upper, long bits) {
  BigFloat sum(bits);
  BigFloat h(bits);
  for (std::size_t n = 0; n <= terms_upper; ++n) {
    const long m = static_cast<long>(n) + 1;
    if (n > 0) h += one(bits) / static_cast<long>(n);
    sum += (h - one(bits)) / m / (m + 1);
  }
  return sum;
}

Rational check_example2_zero_sum_exact(std::size_t terms_upper) {
  Rational sum;
  for (std::size_t n = 0; n <= terms_upper; ++n) {
    const long m = static_cast<long>(n) + 1;
    sum += (harmonic(n) - Rational(1)) / Rational(m * (m + 1));
  }
  return sum;
}

}  // namespace bintegral::corpus
