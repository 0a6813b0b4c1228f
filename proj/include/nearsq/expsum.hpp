#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nearsq/subset.hpp"

namespace nearsq {

enum class LemmaId { L21, L22, L23 };

const char* to_string(LemmaId id) noexcept;

// One measured quantity against its bound. `params` keeps insertion order so
// serialized records are stable.
struct BoundCheckRecord {
  LemmaId lemma = LemmaId::L22;
  std::vector<std::pair<std::string, double>> params;
  double measured = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

inline constexpr std::uint64_t kEnumerationBudget = 100'000'000;

// #{M <= m, m~ < 2M, N <= n, n~ < 2N : |(m~/m)^alpha - (n~/n)^beta| < theta}
// against M N log(2MN) + theta M^2 N^2. Throws Error(Budget) when
// M^2 N^2 > budget.
BoundCheckRecord quadruple_count(std::uint64_t M, std::uint64_t N, double theta, double alpha, double beta,
                                 std::uint64_t budget = kEnumerationBudget);

// #{(b, b1) in B^2 : |sqrt b - sqrt b1| < 1/(2X)} against
// (1 + 2 sqrt(2N)/X) |B|.
BoundCheckRecord pair_count(const IntervalSubset& B, double X);

// Bilinear exponential sum over h in (H0, 2 H0], a in A, b in B of
// e(h sqrt(ab) / d). With unit weights the measured value is
// |sum_h S_h|; with adversarial weights c(h) = conj(S_h)/|S_h| it is
// sum_h |S_h|. Bound: N H1 (|A||B|)^(1/4) (1 + sqrt(d/H1)) sqrt(log(2 N H1))
// with H1 = H0. Throws Error(Budget) when H0 |A||B| > budget.
BoundCheckRecord bilinear_check(std::uint64_t H0, const IntervalSubset& A, const IntervalSubset& B, std::uint64_t d,
                                bool adversarial = false, std::uint64_t budget = kEnumerationBudget);

}  // namespace nearsq
