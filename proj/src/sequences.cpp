#include "bintegral/sequences.hpp"

#include <charconv>

namespace bintegral {

void HarmonicTable::extend_to(std::size_t n) {
  if (n > cap_) {
    throw HarmonicCapError("harmonic index " + std::to_string(n) + " exceeds table cap " +
                           std::to_string(cap_));
  }
  while (h_.size() <= n) {
    const long j = static_cast<long>(h_.size());
    h_.push_back(h_.back() + Rational(1, j));
    h2_.push_back(h2_.back() + Rational(1, j * j));
  }
}

Rational HarmonicTable::h(std::size_t n) {
  std::lock_guard lock(mutex_);
  extend_to(n);
  return h_[n];
}

Rational HarmonicTable::h2(std::size_t n) {
  std::lock_guard lock(mutex_);
  extend_to(n);
  return h2_[n];
}

HarmonicTable& default_harmonics() {
  static HarmonicTable table;
  return table;
}

Rational harmonic(std::size_t n) { return default_harmonics().h(n); }
Rational harmonic2(std::size_t n) { return default_harmonics().h2(n); }

namespace {

Rational alternating(std::size_t k) { return Rational(k % 2 == 0 ? 1 : -1); }

long parse_long_param(const GeneratorSpec& spec, const std::string& key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    throw std::invalid_argument("generator '" + spec.generator + "' requires parameter '" + key + "'");
  }
  long value = 0;
  const auto& s = it->second;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("parameter '" + key + "' is not an integer: '" + s + "'");
  }
  return value;
}

CoefficientSource from_generator(const GeneratorSpec& spec) {
  CoefficientSource src;
  src.name = spec.generator;
  const auto& g = spec.generator;
  if (g == "ex1") {
    src.exact = [](std::size_t k) { return alternating(k) * harmonic(k + 1); };
    src.radius_note = "radius 1 (log(1+x) branch point at -1)";
  } else if (g == "ex2") {
    src.exact = [](std::size_t k) {
      return alternating(k) * harmonic(k + 1) / Rational(static_cast<long>(k) + 2);
    };
    src.radius_note = "radius 1 (log(1+x) branch point at -1)";
  } else if (g == "ex3") {
    src.exact = [](std::size_t k) {
      if (k == 0) return Rational(0);
      return -alternating(k) * harmonic(k) / Rational(static_cast<long>(k));
    };
    src.radius_note = "radius 1 (Li2(x/(1+x)) singular at x = -1)";
  } else if (g == "ex4") {
    const long q = parse_long_param(spec, "q");
    if (q < 1) throw std::invalid_argument("ex4 requires q >= 1");
    src.name = "ex4(q=" + std::to_string(q) + ")";
    src.exact = [q](std::size_t k) { return alternating(k) * binomial(static_cast<long>(k), q); };
    src.radius_note = "radius 1 (pole of order q+1 at x = -1)";
  } else if (g == "ex5") {
    src.exact = [](std::size_t k) {
      return -alternating(k) * harmonic(k) / Rational(static_cast<long>(k) + 1);
    };
    src.radius_note = "radius 1 (log(1+x) branch point at -1)";
  } else if (g == "geometric") {
    const auto it = spec.params.find("r");
    if (it == spec.params.end()) throw std::invalid_argument("generator 'geometric' requires parameter 'r'");
    const Rational r = Rational::parse(it->second);
    src.name = "geometric(r=" + r.to_string() + ")";
    src.exact = [r](std::size_t k) { return pow(r, static_cast<unsigned>(k)); };
    src.radius_note = r.is_zero() ? "entire" : "radius 1/|r|";
    // W_n = ((1+r)^{n+1} - 1) / (r (n+1)), or 1/(n+1) when r = 0.
    src.closed_weighted_sum = [r](std::size_t n) {
      const Rational m(static_cast<long>(n) + 1);
      if (r.is_zero()) return Rational(1) / m;
      return (pow(Rational(1) + r, static_cast<unsigned>(n + 1)) - Rational(1)) / (r * m);
    };
    src.closed_weighted_sum_stream = [r](long bits) -> WeightedSumStream {
      if (r.is_zero()) {
        return [n = 0L, bits]() mutable { return BigFloat::from_long(1, bits) / ++n; };
      }
      const BigFloat one_plus = to_bigfloat(Rational(1) + r, bits);
      const BigFloat rf = to_bigfloat(r, bits);
      return [n = 0L, power = one_plus, one_plus, rf, bits]() mutable {
        BigFloat w = (power - BigFloat::from_long(1, bits)) / rf;
        w /= ++n;
        power *= one_plus;
        return w;
      };
    };
    src.integrand = [r](const BigFloat& x) {
      const BigFloat one = BigFloat::from_long(1, x.precision());
      return one / (one - to_bigfloat(r, x.precision()) * x);
    };
  } else {
    throw std::invalid_argument("unknown coefficient generator '" + g + "'");
  }
  return src;
}

}  // namespace

std::vector<std::string> generator_names() { return {"ex1", "ex2", "ex3", "ex4", "ex5", "geometric"}; }

CoefficientSource make_source(const CoefficientSpec& spec) {
  if (const auto* gen = std::get_if<GeneratorSpec>(&spec)) return from_generator(*gen);

  const auto& list = std::get<ExplicitCoefficients>(spec);
  CoefficientSource src;
  src.name = list.name.empty() ? "explicit" : list.name;
  src.exact = [coeffs = list.coeffs](std::size_t k) { return k < coeffs.size() ? coeffs[k] : Rational(0); };
  src.radius_note = "polynomial (entire)";
  src.integrand = [coeffs = list.coeffs](const BigFloat& x) {
    BigFloat acc(x.precision());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      acc *= x;
      acc += to_bigfloat(*it, x.precision());
    }
    return acc;
  };
  return src;
}

}  // namespace bintegral
