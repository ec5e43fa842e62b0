#pragma once

#include <limits>

namespace tubehom {

/// Nonnegative extended real: a finite value or +inf.
class Extended {
 public:
  constexpr Extended() = default;
  constexpr explicit Extended(double value) : value_(value) {}

  static constexpr Extended infinity() { return Extended(std::numeric_limits<double>::infinity()); }
  static constexpr Extended zero() { return Extended(0.0); }

  constexpr bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }
  constexpr bool is_finite() const { return !is_infinite(); }
  constexpr bool is_zero() const { return value_ == 0.0; }
  constexpr bool is_positive() const { return value_ > 0.0; }
  /// Finite and strictly positive.
  constexpr bool is_proper() const { return is_positive() && is_finite(); }
  constexpr double value() const { return value_; }

  friend constexpr bool operator==(Extended a, Extended b) { return a.value_ == b.value_; }

 private:
  double value_ = 0.0;
};

}  // namespace tubehom
