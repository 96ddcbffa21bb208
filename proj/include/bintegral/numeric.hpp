#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

namespace bintegral {

// ----------------------------------------------------------------------------
// Rational
// ----------------------------------------------------------------------------

/// Exact fraction num/den with den > 0 and gcd(|num|, den) = 1.
///
/// Every constructor and operator leaves the value in canonical form, so
/// equality is structural and the invariants can be checked directly.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class value);
  explicit Rational(const mpz_class& integer) : value_(integer) {}

  /// Parses "n", "-n", "n/d" or a plain decimal such as "0.125" (exactly).
  static Rational parse(std::string_view text);
  /// Builds num/den from decimal-integer strings.
  static Rational from_strings(std::string_view num, std::string_view den);

  const mpq_class& raw() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  double to_double() const { return value_.get_d(); }
  std::string to_string() const { return value_.get_str(); }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& x) { return Rational(mpq_class(-x.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

Rational abs(const Rational& x);
Rational pow(const Rational& base, unsigned exponent);

// ----------------------------------------------------------------------------
// Binomial coefficients
// ----------------------------------------------------------------------------

/// Exact C(n, k) by the multiplicative formula; zero outside 0 <= k <= n.
Rational binomial(long n, long k);

/// Pascal rows generated in order and cached. Not synchronized: give each
/// thread its own instance.
class PascalTriangle {
 public:
  /// Row n as integers C(n, 0..n). Extends the cache as needed.
  const std::vector<mpz_class>& row(std::size_t n);
  std::size_t rows_cached() const { return rows_.size(); }

 private:
  std::vector<std::vector<mpz_class>> rows_;
};

// ----------------------------------------------------------------------------
// BigFloat
// ----------------------------------------------------------------------------

/// Binary floating point number with a per-value mantissa width (>= 53 bits
/// in normal use, lower widths only for cancellation experiments).
///
/// Every arithmetic operation is correctly rounded to nearest at the result
/// precision, which is the larger of the operand precisions.
class BigFloat {
 public:
  static constexpr long kDefaultBits = 128;

  explicit BigFloat(long bits = kDefaultBits);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat from_long(long value, long bits);
  static BigFloat from_double(double value, long bits);
  static BigFloat from_rational(const Rational& value, long bits);
  /// Parses a decimal literal, correctly rounded.
  static BigFloat from_string(std::string_view text, long bits);
  static BigFloat infinity(long bits);

  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }
  /// Same value rounded to `bits`.
  BigFloat rounded(long bits) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Exponent e with 0.5 <= |x| / 2^e < 1; LONG_MIN for zero.
  long exponent() const;
  /// Shortest %g rendering with `digits` significant digits (0: precision
  /// tracking, floor(bits * log10 2)).
  std::string to_string(int digits = 0) const;

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);
  BigFloat& operator*=(long rhs);
  BigFloat& operator/=(long rhs);

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(BigFloat a, long b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, long b) { return a /= b; }
  friend BigFloat operator-(const BigFloat& x);

  friend bool operator==(const BigFloat& a, const BigFloat& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

 private:
  mpfr_t value_;
};

BigFloat abs(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat log1p(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat pow(const BigFloat& x, long exponent);
/// 2^e at the given precision (exact).
BigFloat exp2(long e, long bits);
BigFloat max(const BigFloat& a, const BigFloat& b);

/// r rounded to nearest at `bits` (relative error <= 2^-bits).
BigFloat to_bigfloat(const Rational& r, long bits);

/// Number of leading bits on which a and b agree: -log2(|a-b| / |b|),
/// capped at the larger precision. Exact agreement returns that cap.
double agreeing_bits(const BigFloat& a, const BigFloat& b);

}  // namespace bintegral
