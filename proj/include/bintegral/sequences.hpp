#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bintegral/numeric.hpp"

namespace bintegral {

/// Raised when an exact harmonic number beyond the table cap is requested.
class HarmonicCapError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Memoized exact H_n = sum 1/j and H_n^(2) = sum 1/j^2 for n up to a cap.
///
/// Denominators grow like lcm(1..n), so the table refuses indices past the
/// cap instead of degrading. Thread safe; entries are append-only.
class HarmonicTable {
 public:
  static constexpr std::size_t kDefaultCap = 5000;

  explicit HarmonicTable(std::size_t cap = kDefaultCap) : cap_(cap) {}

  Rational h(std::size_t n);
  Rational h2(std::size_t n);
  std::size_t cap() const { return cap_; }

 private:
  void extend_to(std::size_t n);

  std::size_t cap_;
  std::mutex mutex_;
  std::vector<Rational> h_{Rational(0)};
  std::vector<Rational> h2_{Rational(0)};
};

/// Process-wide table with the default cap.
HarmonicTable& default_harmonics();

Rational harmonic(std::size_t n);
Rational harmonic2(std::size_t n);

using RealFunction = std::function<BigFloat(const BigFloat&)>;

/// Produces W_0, W_1, ... in order at a fixed precision.
using WeightedSumStream = std::function<BigFloat()>;

/// Value of the integral (or any quantity) computed at a requested precision,
/// together with a human readable recipe.
struct Reference {
  std::string recipe;
  std::function<BigFloat(long bits)> evaluate;
};

/// An integrand represented by its Taylor coefficients a_k about 0.
struct CoefficientSource {
  std::string name;
  std::function<Rational(std::size_t k)> exact;
  /// Optional exact closed form of W_n = sum_k C(n,k) a_k / (k+1).
  std::function<Rational(std::size_t n)> closed_weighted_sum;
  /// Optional floating evaluation of the same closed form, fed sequentially.
  std::function<WeightedSumStream(long bits)> closed_weighted_sum_stream;
  /// Optional f(x) itself; must be callable at x = 0 (returns the limit).
  RealFunction integrand;
  std::string radius_note;

  /// a_k at precision `bits`.
  BigFloat coefficient(std::size_t k, long bits) const { return to_bigfloat(exact(k), bits); }
  bool has_closed_form() const { return static_cast<bool>(closed_weighted_sum); }
};

struct ExplicitCoefficients {
  std::string name;
  std::vector<Rational> coeffs;
};

struct GeneratorSpec {
  std::string generator;
  std::map<std::string, std::string> params;
};

using CoefficientSpec = std::variant<ExplicitCoefficients, GeneratorSpec>;

/// Builds a source from an explicit list (trailing coefficients zero) or a
/// registered generator:
///   ex1            a_k = (-1)^k H_{k+1}
///   ex2            a_k = (-1)^k H_{k+1} / (k+2)
///   ex3            a_0 = 0, a_k = (-1)^{k-1} H_k / k
///   ex4  q=<int>   a_k = C(k,q) (-1)^k
///   ex5            a_k = (-1)^{k-1} H_k / (k+1)
///   geometric r=<rational>   a_k = r^k
/// Throws std::invalid_argument for unknown generators or bad parameters.
CoefficientSource make_source(const CoefficientSpec& spec);

/// Names accepted by make_source for generator specs.
std::vector<std::string> generator_names();

}  // namespace bintegral
