#include "nearsq/rational.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "nearsq/error.hpp"

namespace nearsq {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Range: return "range-error";
    case ErrorKind::Regime: return "regime-error";
    case ErrorKind::Budget: return "budget-error";
    case ErrorKind::Accuracy: return "accuracy-error";
    case ErrorKind::Coverage: return "coverage-error";
  }
  return "error";
}

std::string to_string(i128 value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  u128 mag = negative ? -static_cast<u128>(value) : static_cast<u128>(value);
  std::string out;
  while (mag > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 mul(i128 a, i128 b) {
  i128 out;
  if (__builtin_mul_overflow(a, b, &out)) fail(ErrorKind::InvalidArgument, "rational overflow");
  return out;
}

i128 add(i128 a, i128 b) {
  i128 out;
  if (__builtin_add_overflow(a, b, &out)) fail(ErrorKind::InvalidArgument, "rational overflow");
  return out;
}

i128 pow10(int e) {
  i128 r = 1;
  for (int i = 0; i < e; ++i) r = mul(r, 10);
  return r;
}

}  // namespace

Rational::Rational(i128 num, i128 den) {
  if (den == 0) fail(ErrorKind::InvalidArgument, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) fail(ErrorKind::InvalidArgument, "empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational p = parse(text.substr(0, slash));
    const Rational q = parse(text.substr(slash + 1));
    if (q.num() == 0) fail(ErrorKind::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
    return p / q;
  }

  std::string_view s = text;
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  int exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size())
      fail(ErrorKind::InvalidArgument, "bad exponent in '" + std::string(text) + "'");
    s = s.substr(0, e);
  }
  i128 digits = 0;
  int fraction_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_point) fail(ErrorKind::InvalidArgument, "bad number '" + std::string(text) + "'");
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = add(mul(digits, 10), c - '0');
      seen_digit = true;
      if (seen_point) ++fraction_digits;
    } else {
      fail(ErrorKind::InvalidArgument, "bad number '" + std::string(text) + "'");
    }
  }
  if (!seen_digit) fail(ErrorKind::InvalidArgument, "bad number '" + std::string(text) + "'");
  const int scale = exponent - fraction_digits;
  if (scale > 30 || scale < -30) fail(ErrorKind::InvalidArgument, "exponent out of range in '" + std::string(text) + "'");
  Rational r = scale >= 0 ? Rational(mul(digits, pow10(scale))) : Rational(digits, pow10(-scale));
  return negative ? -r : r;
}

double Rational::to_double() const { return static_cast<double>(to_long_double()); }

long double Rational::to_long_double() const {
  return static_cast<long double>(num_) / static_cast<long double>(den_);
}

std::string Rational::str() const {
  if (den_ == 1) return to_string(num_);
  return to_string(num_) + "/" + to_string(den_);
}

i128 Rational::floor() const {
  i128 q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

Rational operator+(const Rational& a, const Rational& b) {
  const i128 g = gcd128(a.den_, b.den_);
  const i128 lhs = mul(a.num_, b.den_ / g);
  const i128 rhs = mul(b.num_, a.den_ / g);
  return Rational(add(lhs, rhs), mul(a.den_ / g, b.den_));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  const i128 g1 = gcd128(a.num_, b.den_);
  const i128 g2 = gcd128(b.num_, a.den_);
  const i128 n1 = g1 > 1 ? a.num_ / g1 : a.num_;
  const i128 d2 = g1 > 1 ? b.den_ / g1 : b.den_;
  const i128 n2 = g2 > 1 ? b.num_ / g2 : b.num_;
  const i128 d1 = g2 > 1 ? a.den_ / g2 : a.den_;
  return Rational(mul(n1, n2), mul(d1, d2));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) fail(ErrorKind::InvalidArgument, "rational division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const Rational d = a - b;
  if (d.num_ < 0) return std::strong_ordering::less;
  if (d.num_ > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace nearsq
