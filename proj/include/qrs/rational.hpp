#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace qrs {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always stored reduced with a positive denominator. Intermediate products
/// are formed in 128 bits; a result that does not fit throws std::overflow_error.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value) {} // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  std::string to_string() const;

private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace qrs
