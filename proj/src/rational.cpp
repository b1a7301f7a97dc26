#include "bkc/rational.hpp"

#include <limits>
#include <ostream>

namespace bkc {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  // The range is kept symmetric so negation can never overflow.
  if (num > kMax || num < -kMax || den > kMax)
    throw RationalOverflow("rational value exceeds 64-bit range");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = num == 0 ? 1 : static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return Rational(q);
}

Rational Rational::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return Rational(q);
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_)
                   : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  const __int128 n = static_cast<__int128>(num_) * o.den_ +
                     static_cast<__int128>(o.num_) * den_;
  const __int128 d = static_cast<__int128>(den_) * o.den_;
  return *this = from_wide(n, d);
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  return *this = from_wide(static_cast<__int128>(num_) * o.num_,
                           static_cast<__int128>(den_) * o.den_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  return *this = from_wide(static_cast<__int128>(num_) * o.den_,
                           static_cast<__int128>(den_) * o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ <=>
         static_cast<__int128>(b.num_) * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace bkc
