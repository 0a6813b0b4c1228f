#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace nearsq {

// Largest integer r with r*r <= n.
std::uint64_t isqrt(std::uint64_t n);

// Immutable table of primes up to `limit`. The smallest-prime-factor array is
// kept only when `limit` is within the memory budget; larger tables are built
// with a segmented sieve and factor by trial division instead.
class PrimeTable {
 public:
  static constexpr std::uint64_t kDefaultSpfBudget = 10'000'000;

  explicit PrimeTable(std::uint64_t limit, std::uint64_t spf_budget = kDefaultSpfBudget);

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint32_t> primes() const { return primes_; }
  bool has_spf() const { return !spf_.empty(); }

  // Requires has_spf() and 2 <= n <= limit().
  std::uint32_t smallest_prime_factor(std::uint64_t n) const { return spf_[n]; }

  // True when every n' <= n can be factored with this table.
  bool covers(std::uint64_t n) const;

  bool is_prime(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
  std::vector<std::uint32_t> spf_;
};

PrimeTable build_prime_table(std::uint64_t limit);

struct PrimePower {
  std::uint64_t prime;
  int exponent;
};

// Prime factorization in increasing prime order; empty for n == 1.
std::vector<PrimePower> factorize(std::uint64_t n, const PrimeTable& table);

struct FactorSignature {
  std::uint64_t n = 1;
  int big_omega = 0;  // prime factors with multiplicity
  int nu = 0;         // distinct prime factors
  int mu = 1;         // Moebius value
  std::uint64_t tau = 1;
};

FactorSignature factor_signature(std::uint64_t n, const PrimeTable& table);

// Omega(n) <= k.
bool is_almost_prime(std::uint64_t n, int k, const PrimeTable& table);

// psi(t) = t - floor(t) - 1/2, in [-1/2, 1/2).
double sawtooth_psi(double t);

// Closest integer; exact half-integers round up.
std::int64_t nearest_integer(double t);

// ||t|| = |t - nearest_integer(t)|, in [0, 1/2].
double distance_to_nearest(double t);

}  // namespace nearsq
