#pragma once

#include <cstdint>

#include "nearsq/rational.hpp"

namespace nearsq {

// Window half-width Delta = p/q held exactly, 0 < Delta < 1, q <= 2^50.
// Real-valued inputs are snapped to a dyadic rational with denominator 2^50;
// the relative snap error is kept for reporting.
struct ExactDelta {
  i128 p = 1;
  i128 q = 2;
  double snap_rel_error = 0.0;

  static constexpr int kDenominatorBits = 50;

  static ExactDelta from_double(double delta);
  static ExactDelta from_rational(const Rational& delta);

  double value() const { return static_cast<double>(static_cast<long double>(p) / static_cast<long double>(q)); }
  Rational rational() const { return Rational(p, q); }
  bool at_most_half() const { return 2 * p <= q; }
};

// Largest window coordinate the exact predicates accept: products ab and
// integers l stay below 2^22 in the square root scale.
inline constexpr std::uint64_t kMaxBaseN = (std::uint64_t{1} << 20);

// ab > (l - Delta)^2, exact. Requires l >= 1 and |ab - l^2| modest.
bool above_lower_edge(std::uint64_t ab, std::uint64_t l, const ExactDelta& d);

// ab < (l + Delta)^2, exact.
bool below_upper_edge(std::uint64_t ab, std::uint64_t l, const ExactDelta& d);

// |sqrt(ab) - l| < Delta
inline bool in_window(std::uint64_t ab, std::uint64_t l, const ExactDelta& d) {
  return above_lower_edge(ab, l, d) && below_upper_edge(ab, l, d);
}

}  // namespace nearsq
