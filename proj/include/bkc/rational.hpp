#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>

namespace bkc {

class RationalOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Exact fraction over checked 64-bit integers. Always normalized
// (gcd(num, den) == 1, den > 0). Any operation whose exact result does not
// fit throws RationalOverflow instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  // INT64_MIN is rejected to keep the range symmetric under negation.
  constexpr Rational(std::int64_t value) : num_(value) {  // NOLINT
    if (value == std::numeric_limits<std::int64_t>::min())
      throw RationalOverflow("rational value exceeds 64-bit range");
  }
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  Rational floor() const;
  Rational ceil() const;
  double to_double() const { return static_cast<double>(num_) / den_; }
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace bkc
