#include "bintegral/numeric.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace bintegral {

namespace {

bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

mpz_class parse_integer(std::string_view s) {
  if (!is_decimal_integer(s)) {
    throw std::invalid_argument("malformed integer literal: '" + std::string(s) + "'");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

// ----------------------------------------------------------------------------
// Rational
// ----------------------------------------------------------------------------

Rational::Rational(long num, long den) : value_(num, den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
  if (value_.get_den() == 0) throw std::domain_error("rational with zero denominator");
  value_.canonicalize();
}

Rational Rational::from_strings(std::string_view num, std::string_view den) {
  mpz_class n = parse_integer(num);
  mpz_class d = parse_integer(den);
  if (d == 0) throw std::domain_error("rational with zero denominator");
  return Rational(mpq_class(n, d));
}

Rational Rational::parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return from_strings(text.substr(0, slash), text.substr(slash + 1));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
      negative = whole.front() == '-';
      whole.remove_prefix(1);
    }
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !is_decimal_integer(whole)) ||
        (!frac.empty() && !is_decimal_integer(frac)) ||
        (!frac.empty() && (frac.front() == '-' || frac.front() == '+'))) {
      throw std::invalid_argument("malformed decimal literal: '" + std::string(text) + "'");
    }
    mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Rational r(mpq_class(digits, scale));
    return negative ? -r : r;
  }
  return Rational(parse_integer(text));
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return Rational(mpq_class(num, den));
}

// ----------------------------------------------------------------------------
// Binomials
// ----------------------------------------------------------------------------

Rational binomial(long n, long k) {
  if (n < 0) throw std::domain_error("binomial: n must be non-negative");
  if (k < 0 || k > n) return Rational(0);
  k = std::min(k, n - k);
  mpz_class acc = 1;
  for (long i = 1; i <= k; ++i) {
    acc *= n - k + i;
    mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return Rational(acc);
}

const std::vector<mpz_class>& PascalTriangle::row(std::size_t n) {
  if (rows_.empty()) rows_.push_back({mpz_class(1)});
  while (rows_.size() <= n) {
    const auto& prev = rows_.back();
    std::vector<mpz_class> next(prev.size() + 1);
    next.front() = 1;
    next.back() = 1;
    for (std::size_t k = 1; k < prev.size(); ++k) next[k] = prev[k - 1] + prev[k];
    rows_.push_back(std::move(next));
  }
  return rows_[n];
}

// ----------------------------------------------------------------------------
// BigFloat
// ----------------------------------------------------------------------------

BigFloat::BigFloat(long bits) {
  mpfr_init2(value_, std::max<long>(bits, MPFR_PREC_MIN));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::from_long(long value, long bits) {
  BigFloat r(bits);
  mpfr_set_si(r.value_, value, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_double(double value, long bits) {
  BigFloat r(bits);
  mpfr_set_d(r.value_, value, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_rational(const Rational& value, long bits) {
  BigFloat r(bits);
  mpfr_set_q(r.value_, value.raw().get_mpq_t(), MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_string(std::string_view text, long bits) {
  BigFloat r(bits);
  const std::string s(text);
  if (mpfr_set_str(r.value_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("malformed decimal literal: '" + s + "'");
  }
  return r;
}

BigFloat BigFloat::infinity(long bits) {
  BigFloat r(bits);
  mpfr_set_inf(r.value_, 1);
  return r;
}

BigFloat BigFloat::rounded(long bits) const {
  BigFloat r(bits);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

long BigFloat::exponent() const {
  if (mpfr_zero_p(value_)) return LONG_MIN;
  return static_cast<long>(mpfr_get_exp(value_));
}

std::string BigFloat::to_string(int digits) const {
  if (digits <= 0) {
    digits = std::max(1, static_cast<int>(std::floor(static_cast<double>(precision()) * 0.30102999566398120)));
  }
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Rg", digits, value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

namespace {

long result_bits(const BigFloat& a, const BigFloat& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(result_bits(a, b));
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(result_bits(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(result_bits(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(result_bits(a, b));
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_neg(r.value_, x.value_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

BigFloat abs(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat log(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat log1p(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_log1p(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& x, long exponent) {
  BigFloat r(x.precision());
  mpfr_pow_si(r.get(), x.get(), exponent, MPFR_RNDN);
  return r;
}

BigFloat exp2(long e, long bits) {
  BigFloat r(bits);
  mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
  return r;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

BigFloat to_bigfloat(const Rational& r, long bits) { return BigFloat::from_rational(r, bits); }

double agreeing_bits(const BigFloat& a, const BigFloat& b) {
  const long bits = std::max(a.precision(), b.precision());
  const BigFloat diff = abs(a - b);
  if (diff.is_zero()) return static_cast<double>(bits);
  if (b.is_zero()) return 0.0;
  BigFloat rel = diff / abs(b);
  BigFloat lg(bits);
  mpfr_log2(lg.get(), rel.get(), MPFR_RNDN);
  return std::min(static_cast<double>(bits), -lg.to_double());
}

}  // namespace bintegral
