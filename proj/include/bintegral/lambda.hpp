#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bintegral/numeric.hpp"

namespace bintegral {

/// Upper limit of integration: a positive rational or +infinity.
class Lambda {
 public:
  static Lambda infinite() { return Lambda(); }
  static Lambda finite(Rational value) {
    if (value.sign() <= 0) throw std::invalid_argument("lambda must be positive");
    Lambda l;
    l.value_ = std::move(value);
    return l;
  }
  /// "inf", "infinity", or a rational/decimal literal.
  static Lambda parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "Inf") return infinite();
    return finite(Rational::parse(text));
  }

  bool is_infinite() const { return !value_.has_value(); }
  const Rational& value() const {
    if (!value_) throw std::logic_error("lambda is infinite");
    return *value_;
  }
  /// lambda / (lambda + 1), or exactly 1 for infinity.
  Rational rho() const { return value_ ? *value_ / (*value_ + Rational(1)) : Rational(1); }
  std::string to_string() const { return value_ ? value_->to_string() : "inf"; }

  friend bool operator==(const Lambda&, const Lambda&) = default;

 private:
  Lambda() = default;
  std::optional<Rational> value_;
};

}  // namespace bintegral
