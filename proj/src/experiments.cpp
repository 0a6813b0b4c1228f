#include "nearsq/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nearsq/error.hpp"
#include "nearsq/kernels.hpp"

namespace nearsq {

std::uint64_t HybridCount::multiplicity_of(std::uint64_t l) const {
  if (l < l_offset || l > max_l()) return 0;
  return multiplicity[l - l_offset];
}

bool power_below(std::uint64_t p, int e, std::uint64_t M) {
  unsigned __int128 acc = 1;
  for (int i = 0; i < e; ++i) {
    acc *= p;
    if (acc >= M) return false;
  }
  return acc < M;
}

std::uint64_t estimate_window_work(const IntervalSubset& A, const IntervalSubset& B, double delta) {
  if (A.empty() || B.empty()) return 0;
  const double spread = std::sqrt(static_cast<double>(B.elements.back())) - std::sqrt(static_cast<double>(B.elements.front()));
  double total = 0.0;
  for (std::uint64_t a : A.elements)
    total += std::min(static_cast<double>(B.size()), std::sqrt(static_cast<double>(a)) * spread + 2.0 * delta + 3.0);
  return static_cast<std::uint64_t>(total);
}

ExactDelta delta_from_exponent(std::uint64_t N, double exponent) {
  return ExactDelta::from_double(std::pow(static_cast<double>(N), -exponent));
}

HybridCount count_H(const IntervalSubset& A, const IntervalSubset& B, const ExactDelta& delta, std::uint64_t budget) {
  if (A.base_N != B.base_N) fail(ErrorKind::InvalidArgument, "A and B must share the base N");
  const std::uint64_t estimate = estimate_window_work(A, B, delta.value());
  if (estimate > budget)
    fail(ErrorKind::Budget, "estimated work " + std::to_string(estimate) + " exceeds the budget " + std::to_string(budget));
  const auto tally = kernels::window_tally(A.elements, B.elements, A.base_N, delta);
  HybridCount hc;
  hc.base_N = A.base_N;
  hc.delta = delta;
  hc.A_size = A.size();
  hc.B_size = B.size();
  hc.H_count = tally.hit_pairs;
  hc.l_offset = tally.l_offset;
  hc.multiplicity = tally.multiplicity;
  hc.work = tally.work;
  for (std::uint64_t m : hc.multiplicity) {
    hc.multiset_size += m;
    hc.distinct_count += m > 0 ? 1 : 0;
  }
  return hc;
}

AlmostPrimeCount almost_prime_count(const HybridCount& hc, int k, const PrimeTable& table) {
  AlmostPrimeCount out;
  for (std::size_t i = 0; i < hc.multiplicity.size(); ++i) {
    const std::uint64_t m = hc.multiplicity[i];
    if (m == 0 || !is_almost_prime(hc.l_offset + i, k, table)) continue;
    out.multiset += m;
    ++out.distinct;
  }
  return out;
}

double SieveDecomposition::max_scaled_remainder(std::uint64_t d_limit) const {
  const double x = X.to_double();
  double best = 0.0;
  for (std::uint64_t d = 1; d <= std::min(d_limit, d_max); ++d)
    best = std::max(best, static_cast<double>(d) * std::fabs(remainders[d].to_double()) / x);
  return best;
}

SieveDecomposition sieve_decomposition(const HybridCount& hc, std::uint64_t A_size, std::uint64_t B_size,
                                       std::uint64_t d_max) {
  if (d_max < 1) fail(ErrorKind::InvalidArgument, "d_max must be >= 1");
  SieveDecomposition out;
  out.X = Rational(2) * hc.delta.rational() * Rational(static_cast<i128>(A_size)) * Rational(static_cast<i128>(B_size));
  out.d_max = d_max;
  out.counts.assign(d_max + 1, 0);
  out.remainders.assign(d_max + 1, Rational(0));
  for (std::uint64_t d = 1; d <= d_max; ++d) {
    std::uint64_t count = 0;
    const std::uint64_t first = (hc.l_offset + d - 1) / d * d;
    for (std::uint64_t l = first; l - hc.l_offset < hc.multiplicity.size(); l += d) count += hc.multiplicity[l - hc.l_offset];
    out.counts[d] = count;
    out.remainders[d] = Rational(static_cast<i128>(count)) - out.X / Rational(static_cast<i128>(d));
  }
  return out;
}

namespace {

template <class Excluded>
std::uint64_t sift(const HybridCount& hc, const PrimeTable& table, Excluded excluded) {
  std::uint64_t survivors = 0;
  for (std::size_t i = 0; i < hc.multiplicity.size(); ++i) {
    const std::uint64_t m = hc.multiplicity[i];
    if (m == 0) continue;
    bool keep = true;
    for (const auto& pp : factorize(hc.l_offset + i, table)) {
      if (excluded(pp.prime)) {
        keep = false;
        break;
      }
    }
    if (keep) survivors += m;
  }
  return survivors;
}

}  // namespace

std::uint64_t sifting_function(const HybridCount& hc, double z, const PrimeTable& table) {
  if (!(z >= 2.0)) fail(ErrorKind::InvalidArgument, "z must be >= 2");
  return sift(hc, table, [z](std::uint64_t p) { return static_cast<double>(p) < z; });
}

std::uint64_t sifting_function_root(const HybridCount& hc, std::uint64_t M, int e, const PrimeTable& table) {
  if (e < 1) fail(ErrorKind::InvalidArgument, "root order must be >= 1");
  if (!power_below(2, e, M + 1) || M < 2) fail(ErrorKind::InvalidArgument, "z = M^(1/e) must be >= 2");
  return sift(hc, table, [M, e](std::uint64_t p) { return power_below(p, e, M); });
}

WeightedSum weighted_sum(const HybridCount& hc, int k, const PrimeTable& table) {
  if (k < 4 || k > 14) fail(ErrorKind::InvalidArgument, "weighted sum needs 4 <= k <= 14");
  const std::uint64_t N = hc.base_N;
  WeightedSum out;
  for (std::size_t i = 0; i < hc.multiplicity.size(); ++i) {
    const std::uint64_t m = hc.multiplicity[i];
    if (m == 0) continue;
    bool survives = true;
    bool squarefree = true;
    std::int64_t middle = 0;
    for (const auto& pp : factorize(hc.l_offset + i, table)) {
      if (power_below(pp.prime, 15, N)) {
        survives = false;
        break;
      }
      if (power_below(pp.prime, k, N)) ++middle;
      if (pp.exponent > 1) squarefree = false;
    }
    if (!survives) continue;
    const std::int64_t twice = (2 - middle) * static_cast<std::int64_t>(m);
    out.twice_value += twice;
    if (squarefree) out.twice_value_squarefree += twice;
  }
  return out;
}

Theorem1Residual theorem1_residual(const HybridCount& hc) {
  Theorem1Residual out;
  const double N = static_cast<double>(hc.base_N);
  const double sizes = static_cast<double>(hc.A_size) * static_cast<double>(hc.B_size);
  out.H = hc.H_count;
  out.main_term = 2.0 * hc.delta.value() * sizes;
  out.normalizer = N * std::pow(sizes, 0.25) * std::pow(std::log(N), 1.5);
  out.residual = out.normalizer > 0.0 ? (static_cast<double>(out.H) - out.main_term) / out.normalizer : 0.0;
  out.dense_regime = sizes >= std::pow(N, 4.0 / 3.0);
  return out;
}

Theorem1Residual theorem1_residual(const IntervalSubset& A, const IntervalSubset& B, const ExactDelta& delta,
                                   std::uint64_t budget) {
  return theorem1_residual(count_H(A, B, delta, budget));
}

}  // namespace nearsq
