#pragma once

#include <cstdint>
#include <vector>

#include "nearsq/arith.hpp"
#include "nearsq/rational.hpp"
#include "nearsq/subset.hpp"
#include "nearsq/window.hpp"

namespace nearsq {

/// Exact tally of pairs (a, b) with ||sqrt(ab)|| < Delta together with the
/// multiset of integers l in the window (sqrt(ab) - Delta, sqrt(ab) + Delta).
///
/// For Delta <= 1/2 each hit pair contributes its nearest integer once, so
/// H_count equals the multiset size. For 1/2 < Delta < 1 the windows may hold
/// two integers; the multiset keeps every one (this is the floor-difference
/// sum floor(sqrt(ab) + Delta) - floor(sqrt(ab) - Delta)) while H_count is
/// then |A||B|.
struct HybridCount {
  std::uint64_t base_N = 0;
  ExactDelta delta;
  std::uint64_t A_size = 0;
  std::uint64_t B_size = 0;
  std::uint64_t H_count = 0;
  std::uint64_t l_offset = 0;
  std::vector<std::uint64_t> multiplicity;  // multiplicity[i] counts l = l_offset + i
  std::uint64_t multiset_size = 0;
  std::uint64_t distinct_count = 0;
  std::uint64_t work = 0;

  std::uint64_t multiplicity_of(std::uint64_t l) const;
  std::uint64_t max_l() const { return l_offset + multiplicity.size() - 1; }
};

// Counted in row-pruned inner iterations (one per candidate l, or one per
// pair on rows where that is cheaper).
inline constexpr std::uint64_t kWindowWorkBudget = 10'000'000'000;

std::uint64_t estimate_window_work(const IntervalSubset& A, const IntervalSubset& B, double delta);

// Delta = N^-exponent snapped to a dyadic rational.
ExactDelta delta_from_exponent(std::uint64_t N, double exponent);

// Throws Error(Budget) when the work estimate exceeds `budget`.
HybridCount count_H(const IntervalSubset& A, const IntervalSubset& B, const ExactDelta& delta,
                    std::uint64_t budget = kWindowWorkBudget);

struct AlmostPrimeCount {
  std::uint64_t multiset = 0;  // with multiplicity
  std::uint64_t distinct = 0;
};

// Entries l with Omega(l) <= k.
AlmostPrimeCount almost_prime_count(const HybridCount& hc, int k, const PrimeTable& table);

/// |A_d| = #{l in the multiset : d | l} for d <= d_max, with
/// X = 2 Delta |A||B| and r(d) = |A_d| - X/d held exactly.
struct SieveDecomposition {
  Rational X;
  std::uint64_t d_max = 0;
  std::vector<std::uint64_t> counts;  // counts[d], index 0 unused
  std::vector<Rational> remainders;   // remainders[d], index 0 unused

  // max_{d <= d_limit} d |r(d)| / X
  double max_scaled_remainder(std::uint64_t d_limit) const;
};

SieveDecomposition sieve_decomposition(const HybridCount& hc, std::uint64_t A_size, std::uint64_t B_size,
                                       std::uint64_t d_max);

// Entries with no prime factor p < z.
std::uint64_t sifting_function(const HybridCount& hc, double z, const PrimeTable& table);

// Same with z = M^(1/e), decided exactly as p^e < M.
std::uint64_t sifting_function_root(const HybridCount& hc, std::uint64_t M, int e, const PrimeTable& table);

/// Weighted sum over entries free of primes p < N^(1/15), each weighted by
/// 1 - (1/2) #{p | l : N^(1/15) <= p < N^(1/k)}. Values are half-integers, so
/// twice the sum is stored.
struct WeightedSum {
  std::int64_t twice_value = 0;
  std::int64_t twice_value_squarefree = 0;  // restricted to squarefree l

  double value() const { return twice_value / 2.0; }
  double value_squarefree() const { return twice_value_squarefree / 2.0; }
};

// Requires 4 <= k <= 14.
WeightedSum weighted_sum(const HybridCount& hc, int k, const PrimeTable& table);

// (H - 2 Delta |A||B|) / (N (|A||B|)^(1/4) log^(3/2) N)
struct Theorem1Residual {
  std::uint64_t H = 0;
  double main_term = 0.0;
  double normalizer = 0.0;
  double residual = 0.0;
  bool dense_regime = false;  // |A||B| >= N^(4/3)
};

Theorem1Residual theorem1_residual(const HybridCount& hc);
Theorem1Residual theorem1_residual(const IntervalSubset& A, const IntervalSubset& B, const ExactDelta& delta,
                                   std::uint64_t budget = kWindowWorkBudget);

// p^e < M without overflow.
bool power_below(std::uint64_t p, int e, std::uint64_t M);

}  // namespace nearsq
