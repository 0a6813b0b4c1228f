#include "nearsq/arith.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nearsq/error.hpp"

namespace nearsq {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && (r > UINT32_MAX || r * r > n)) --r;
  while (r + 1 <= UINT32_MAX && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

namespace {

std::vector<std::uint32_t> simple_sieve(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t limit, std::uint64_t spf_budget) : limit_(limit) {
  if (limit < 2) fail(ErrorKind::InvalidArgument, "prime table limit must be >= 2");
  if (limit > UINT32_MAX) fail(ErrorKind::InvalidArgument, "prime table limit exceeds 2^32");

  if (limit <= spf_budget) {
    // Linear sieve: each composite is struck exactly once by its smallest prime.
    spf_.assign(limit + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (spf_[i] == 0) {
        spf_[i] = static_cast<std::uint32_t>(i);
        primes_.push_back(static_cast<std::uint32_t>(i));
      }
      for (std::uint32_t p : primes_) {
        if (p > spf_[i] || i * p > limit) break;
        spf_[i * p] = p;
      }
    }
    return;
  }

  const std::uint64_t root = isqrt(limit);
  const std::vector<std::uint32_t> base = simple_sieve(root);
  primes_ = base;
  constexpr std::uint64_t kSegment = 1 << 20;
  std::vector<char> composite(kSegment);
  for (std::uint64_t lo = root + 1; lo <= limit; lo += kSegment) {
    const std::uint64_t hi = std::min(limit, lo + kSegment - 1);
    std::fill(composite.begin(), composite.end(), 0);
    for (std::uint32_t p : base) {
      const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
      if (pp > hi) break;
      std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) composite[j - lo] = 1;
    }
    for (std::uint64_t n = lo; n <= hi; ++n)
      if (!composite[n - lo]) primes_.push_back(static_cast<std::uint32_t>(n));
  }
}

bool PrimeTable::covers(std::uint64_t n) const {
  if (n <= limit_) return true;
  const std::uint64_t r = isqrt(n);
  return r <= limit_;
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n < 2) return false;
  if (n <= limit_) {
    if (has_spf()) return spf_[n] == n;
    return std::binary_search(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(n));
  }
  auto f = factorize(n, *this);
  return f.size() == 1 && f.front().exponent == 1;
}

PrimeTable build_prime_table(std::uint64_t limit) { return PrimeTable(limit); }

std::vector<PrimePower> factorize(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "cannot factor 0");
  std::vector<PrimePower> out;
  if (n == 1) return out;

  if (table.has_spf() && n <= table.limit()) {
    while (n > 1) {
      const std::uint32_t p = table.smallest_prime_factor(n);
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.push_back({p, e});
    }
    return out;
  }

  if (!table.covers(n))
    fail(ErrorKind::Coverage, "prime table limit " + std::to_string(table.limit()) +
                                  " does not cover factorization of " + std::to_string(n));
  for (std::uint32_t p : table.primes()) {
    const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
    if (pp > n) break;
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

FactorSignature factor_signature(std::uint64_t n, const PrimeTable& table) {
  FactorSignature sig;
  sig.n = n;
  for (const auto& [p, e] : factorize(n, table)) {
    sig.big_omega += e;
    sig.nu += 1;
    sig.tau *= static_cast<std::uint64_t>(e + 1);
    sig.mu = e > 1 ? 0 : -sig.mu;
  }
  if (sig.big_omega != sig.nu) sig.mu = 0;
  return sig;
}

bool is_almost_prime(std::uint64_t n, int k, const PrimeTable& table) {
  return factor_signature(n, table).big_omega <= k;
}

double sawtooth_psi(double t) {
  double frac = t - std::floor(t);
  if (frac >= 1.0) frac = std::nextafter(1.0, 0.0);
  return frac - 0.5;
}

std::int64_t nearest_integer(double t) {
  const double fl = std::floor(t);
  const double frac = t - fl;
  return static_cast<std::int64_t>(fl) + (frac >= 0.5 ? 1 : 0);
}

double distance_to_nearest(double t) {
  const double frac = t - std::floor(t);
  return std::min(frac, 1.0 - frac);
}

}  // namespace nearsq
