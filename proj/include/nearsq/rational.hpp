#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace nearsq {

using i128 = __int128;
using u128 = unsigned __int128;

std::string to_string(i128 value);

// Exact rational with 128-bit numerator and denominator, always reduced and
// with a positive denominator. Arithmetic throws Error(InvalidArgument) on
// overflow rather than wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(i128 num, i128 den = 1);
  Rational(int num) : Rational(static_cast<i128>(num)) {}
  Rational(long num) : Rational(static_cast<i128>(num)) {}
  Rational(long long num) : Rational(static_cast<i128>(num)) {}
  Rational(unsigned long num) : Rational(static_cast<i128>(num)) {}
  Rational(unsigned long long num) : Rational(static_cast<i128>(num)) {}

  // Accepts "p/q", integers and finite decimals ("0.07", "-1.5e-3").
  static Rational parse(std::string_view text);

  i128 num() const { return num_; }
  i128 den() const { return den_; }

  double to_double() const;
  long double to_long_double() const;
  std::string str() const;

  // Largest integer <= value.
  i128 floor() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  i128 num_ = 0;
  i128 den_ = 1;
};

}  // namespace nearsq
