#include "nearsq/subset.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "nearsq/arith.hpp"
#include "nearsq/error.hpp"

namespace nearsq {

const char* to_string(ProvenanceKind kind) noexcept {
  switch (kind) {
    case ProvenanceKind::Full: return "full";
    case ProvenanceKind::Bernoulli: return "bernoulli";
    case ProvenanceKind::Explicit: return "explicit";
    case ProvenanceKind::AdversarialSpread: return "adversarial-spread";
  }
  return "?";
}

std::string Provenance::describe() const {
  if (kind != ProvenanceKind::Bernoulli) return to_string(kind);
  char buf[96];
  std::snprintf(buf, sizeof buf, "bernoulli(%.12g,%llu)", density, static_cast<unsigned long long>(seed));
  return buf;
}

IntervalSubset generate_subset(std::uint64_t base_N, const Provenance& provenance) {
  if (base_N < 2) fail(ErrorKind::InvalidArgument, "base N must be >= 2");
  IntervalSubset out;
  out.base_N = base_N;
  out.provenance = provenance;
  auto& xs = out.elements;
  switch (provenance.kind) {
    case ProvenanceKind::Full:
      xs.resize(base_N);
      for (std::uint64_t i = 0; i < base_N; ++i) xs[i] = base_N + 1 + i;
      break;
    case ProvenanceKind::Bernoulli: {
      const double p = provenance.density;
      if (!(p > 0.0 && p <= 1.0)) fail(ErrorKind::InvalidArgument, "density must lie in (0, 1]");
      std::mt19937_64 rng(provenance.seed);
      for (std::uint64_t n = base_N + 1; n <= 2 * base_N; ++n)
        if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) xs.push_back(n);
      break;
    }
    case ProvenanceKind::Explicit:
      xs = provenance.explicit_elements;
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      if (!xs.empty() && (xs.front() <= base_N || xs.back() > 2 * base_N))
        fail(ErrorKind::InvalidArgument, "explicit elements must lie in (N, 2N]");
      out.provenance.explicit_elements.clear();
      break;
    case ProvenanceKind::AdversarialSpread:
      // s + 1/4 <= sqrt(n) <= s + 3/4  <=>  (4s+1)^2 <= 16n <= (4s+3)^2
      for (std::uint64_t n = base_N + 1; n <= 2 * base_N; ++n) {
        const std::uint64_t s = isqrt(n);
        if ((4 * s + 1) * (4 * s + 1) <= 16 * n && 16 * n <= (4 * s + 3) * (4 * s + 3)) xs.push_back(n);
      }
      break;
  }
  return out;
}

}  // namespace nearsq
