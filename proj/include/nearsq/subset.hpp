#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nearsq {

enum class ProvenanceKind { Full, Bernoulli, Explicit, AdversarialSpread };

const char* to_string(ProvenanceKind kind) noexcept;

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::Full;
  double density = 1.0;  // Bernoulli only
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> explicit_elements;  // Explicit only

  static Provenance full() { return {}; }
  static Provenance bernoulli(double p, std::uint64_t seed) { return {ProvenanceKind::Bernoulli, p, seed, {}}; }
  static Provenance explicit_list(std::vector<std::uint64_t> xs) {
    return {ProvenanceKind::Explicit, 1.0, 0, std::move(xs)};
  }
  static Provenance adversarial_spread() { return {ProvenanceKind::AdversarialSpread, 1.0, 0, {}}; }

  std::string describe() const;
};

// Sorted distinct subset of {N+1, ..., 2N}.
struct IntervalSubset {
  std::uint64_t base_N = 0;
  std::vector<std::uint64_t> elements;
  Provenance provenance;

  std::size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }
};

// Bernoulli keeps n when (rng() >> 11) * 2^-53 < p with rng a mt19937_64
// seeded by `seed`, walking n upward, so the set is reproducible on every
// platform. Adversarial spread keeps n with ||sqrt n|| >= 1/4. Explicit
// lists are sorted and deduplicated; out-of-range entries are rejected.
IntervalSubset generate_subset(std::uint64_t base_N, const Provenance& provenance);

}  // namespace nearsq
