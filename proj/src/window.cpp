#include "nearsq/window.hpp"

#include <cmath>
#include <string>

#include "nearsq/error.hpp"

namespace nearsq {

namespace {

void reduce_dyadic(i128& p, i128& q) {
  while (p % 2 == 0 && q % 2 == 0 && q > 1) {
    p /= 2;
    q /= 2;
  }
}

}  // namespace

ExactDelta ExactDelta::from_double(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    fail(ErrorKind::InvalidArgument, "Delta must lie in (0, 1), got " + std::to_string(delta));
  ExactDelta d;
  d.q = i128{1} << kDenominatorBits;
  d.p = static_cast<i128>(std::llround(std::ldexp(delta, kDenominatorBits)));
  if (d.p <= 0) fail(ErrorKind::InvalidArgument, "Delta too small to represent: " + std::to_string(delta));
  reduce_dyadic(d.p, d.q);
  d.snap_rel_error = std::fabs(d.value() - delta) / delta;
  return d;
}

ExactDelta ExactDelta::from_rational(const Rational& delta) {
  if (!(delta > Rational(0) && delta < Rational(1)))
    fail(ErrorKind::InvalidArgument, "Delta must lie in (0, 1), got " + delta.str());
  if (delta.den() > (i128{1} << kDenominatorBits)) return from_double(delta.to_double());
  ExactDelta d;
  d.p = delta.num();
  d.q = delta.den();
  return d;
}

// With D = ab - l^2:  ab < (l + p/q)^2  <=>  q^2 D < 2lpq + p^2
//                     ab > (l - p/q)^2  <=>  q^2 D > p^2 - 2lpq
// |D| is bounded by 2^24 before the 128-bit product; beyond that the sign of
// D alone decides, since both edges lie within 2l + 1 of l^2.
bool below_upper_edge(std::uint64_t ab, std::uint64_t l, const ExactDelta& d) {
  const i128 D = static_cast<i128>(ab) - static_cast<i128>(l) * static_cast<i128>(l);
  if (D > (i128{1} << 24)) return false;
  if (D < -(i128{1} << 24)) return true;
  const i128 lhs = d.q * d.q * D;
  const i128 rhs = 2 * static_cast<i128>(l) * d.p * d.q + d.p * d.p;
  return lhs < rhs;
}

bool above_lower_edge(std::uint64_t ab, std::uint64_t l, const ExactDelta& d) {
  const i128 D = static_cast<i128>(ab) - static_cast<i128>(l) * static_cast<i128>(l);
  if (D > (i128{1} << 24)) return true;
  if (D < -(i128{1} << 24)) return false;
  const i128 lhs = d.q * d.q * D;
  const i128 rhs = d.p * d.p - 2 * static_cast<i128>(l) * d.p * d.q;
  return lhs > rhs;
}

}  // namespace nearsq
