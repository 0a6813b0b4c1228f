#pragma once

// Hot loops behind the counting experiments and exponential-sum checks.
// Every kernel has a straightforward serial reference next to the OpenMP
// version; results of the two must agree exactly (integer counts) or to
// rounding (complex sums, which are merged in a fixed order so they do not
// depend on the thread count).

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "nearsq/window.hpp"

namespace nearsq::kernels {

// Multiset of integers l lying in an open window (sqrt(ab) - Delta,
// sqrt(ab) + Delta), tallied over all pairs (a, b).
struct WindowTally {
  std::uint64_t l_offset = 0;              // multiplicity[i] counts l = l_offset + i
  std::vector<std::uint64_t> multiplicity;
  std::uint64_t hit_pairs = 0;             // pairs with ||sqrt(ab)|| < Delta
  std::uint64_t work = 0;                  // inner iterations performed
};

// Both sets must be sorted, distinct and inside (base_N, 2 base_N].
WindowTally window_tally(std::span<const std::uint64_t> A, std::span<const std::uint64_t> B,
                         std::uint64_t base_N, const ExactDelta& delta);

// Per-pair floating-point recount used to validate the exact counter.
struct FloatRecount {
  std::uint64_t float_hits = 0;     // sqrt in double, compared with Delta in double
  std::uint64_t compared = 0;       // pairs whose boundary margin exceeds `margin`
  std::uint64_t disagreements = 0;  // among compared pairs, float vs exact
  double min_margin = 1.0;
};

FloatRecount float_recount(std::span<const std::uint64_t> A, std::span<const std::uint64_t> B,
                           const ExactDelta& delta, double margin);

// Number of quadruples with |(m2/m1)^alpha - (n2/n1)^beta| < theta,
// M <= m1, m2 < 2M and N <= n1, n2 < 2N.
std::uint64_t quadruple_count(std::uint64_t M, std::uint64_t N, double theta, double alpha, double beta);

// Number of ordered pairs (b, b1) with |sqrt(b) - sqrt(b1)| < width.
std::uint64_t pair_count(std::span<const std::uint64_t> B, double width);

// S_h = sum_a sum_b e(h sqrt(ab) / d) for h in (H0, 2 H0].
std::vector<std::complex<double>> bilinear_sums(std::uint64_t H0, std::span<const std::uint64_t> A,
                                                std::span<const std::uint64_t> B, std::uint64_t d);

namespace serial {

WindowTally window_tally(std::span<const std::uint64_t> A, std::span<const std::uint64_t> B,
                         std::uint64_t base_N, const ExactDelta& delta);
std::uint64_t quadruple_count(std::uint64_t M, std::uint64_t N, double theta, double alpha, double beta);
std::uint64_t pair_count(std::span<const std::uint64_t> B, double width);
std::vector<std::complex<double>> bilinear_sums(std::uint64_t H0, std::span<const std::uint64_t> A,
                                                std::span<const std::uint64_t> B, std::uint64_t d);

}  // namespace serial

}  // namespace nearsq::kernels
