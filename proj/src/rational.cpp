#include "qrs/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

#include "qrs/errors.hpp"

namespace qrs {

namespace {

__int128 gcd_wide(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  if (!fits(num) || !fits(den)) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  __int128 n = static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_;
  __int128 d = static_cast<__int128>(den_) * rhs.den_;
  return *this = from_wide(n, d);
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  __int128 n = static_cast<__int128>(num_) * rhs.num_;
  __int128 d = static_cast<__int128>(den_) * rhs.den_;
  return *this = from_wide(n, d);
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("rational division by zero");
  __int128 n = static_cast<__int128>(num_) * rhs.den_;
  __int128 d = static_cast<__int128>(den_) * rhs.num_;
  return *this = from_wide(n, d);
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  __int128 l = static_cast<__int128>(lhs.num_) * rhs.den_;
  __int128 r = static_cast<__int128>(rhs.num_) * lhs.den_;
  return l <=> r;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

} // namespace qrs
