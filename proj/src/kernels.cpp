#include "nearsq/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nearsq/arith.hpp"
#include "nearsq/error.hpp"

namespace nearsq::kernels {

namespace {

// Compensated accumulator for one complex running sum.
struct KahanComplex {
  double re = 0.0, re_c = 0.0, im = 0.0, im_c = 0.0;

  void add(double x, double y) {
    const double yr = x - re_c;
    const double tr = re + yr;
    re_c = (tr - re) - yr;
    re = tr;
    const double yi = y - im_c;
    const double ti = im + yi;
    im_c = (ti - im) - yi;
    im = ti;
  }
  std::complex<double> value() const { return {re, im}; }
};

// e(h sqrt(ab) / d) with the phase reduced mod 1 before the trig calls.
inline void unit_phase(std::uint64_t h, long double root, std::uint64_t d, double& c, double& s) {
  const long double phase = static_cast<long double>(h) * root / static_cast<long double>(d);
  const long double frac = phase - std::floor(phase);
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(frac);
  c = std::cos(angle);
  s = std::sin(angle);
}

inline double ratio_power(std::uint64_t num, std::uint64_t den, double exponent) {
  return std::pow(static_cast<double>(num) / static_cast<double>(den), exponent);
}

void check_window_inputs(std::span<const std::uint64_t> A, std::span<const std::uint64_t> B, std::uint64_t base_N) {
  if (base_N < 2) fail(ErrorKind::InvalidArgument, "base N must be >= 2");
  if (base_N > kMaxBaseN)
    fail(ErrorKind::Budget, "base N " + std::to_string(base_N) + " exceeds the exact-arithmetic range 2^20");
  for (auto set : {A, B}) {
    if (!set.empty() && (set.front() <= base_N || set.back() > 2 * base_N))
      fail(ErrorKind::InvalidArgument, "set elements must lie in (N, 2N]");
  }
}

// Pairwise exact tally for one row a; used by both the reference and the
// parallel kernel when B is sparse relative to the number of windows.
inline void tally_row_pairs(std::uint64_t a, std::span<const std::uint64_t> B, const ExactDelta& delta,
                            std::uint64_t l_offset, std::vector<std::uint64_t>& mult, std::uint64_t& hits) {
  for (std::uint64_t b : B) {
    const std::uint64_t ab = a * b;
    const std::uint64_t s = isqrt(ab);
    bool hit = false;
    for (std::uint64_t l = s; l <= s + 1; ++l) {
      if (l >= 1 && in_window(ab, l, delta)) {
        ++mult[l - l_offset];
        hit = true;
      }
    }
    hits += hit ? 1 : 0;
  }
}

constexpr double kFloatSafety = 1e-7;

// Smallest b with ab > (l - Delta)^2.
inline std::uint64_t first_b_above(std::uint64_t a, std::uint64_t l, double dd, const ExactDelta& delta) {
  const double edge = (static_cast<double>(l) - dd) * (static_cast<double>(l) - dd) / static_cast<double>(a);
  const double fl = std::floor(edge);
  const double fr = edge - fl;
  if (fr > kFloatSafety && fr < 1.0 - kFloatSafety) return static_cast<std::uint64_t>(fl) + 1;
  std::uint64_t b = fl >= 2.0 ? static_cast<std::uint64_t>(fl) - 1 : 1;
  while (!above_lower_edge(a * b, l, delta)) ++b;
  return b;
}

// Largest b with ab < (l + Delta)^2, or 0 if none.
inline std::uint64_t last_b_below(std::uint64_t a, std::uint64_t l, double dd, const ExactDelta& delta) {
  const double edge = (static_cast<double>(l) + dd) * (static_cast<double>(l) + dd) / static_cast<double>(a);
  const double fl = std::floor(edge);
  const double fr = edge - fl;
  if (fr > kFloatSafety && fr < 1.0 - kFloatSafety) return static_cast<std::uint64_t>(fl);
  std::uint64_t b = static_cast<std::uint64_t>(fl) + 2;
  while (b > 0 && !below_upper_edge(a * b, l, delta)) --b;
  return b;
}

}  // namespace

WindowTally window_tally(std::span<const std::uint64_t> A, std::span<const std::uint64_t> B,
                         std::uint64_t base_N, const ExactDelta& delta) {
  check_window_inputs(A, B, base_N);
  WindowTally out;
  out.l_offset = base_N - 1;
  out.multiplicity.assign(base_N + 4, 0);
  if (A.empty() || B.empty()) return out;

  // rank[x - base_N] = #{b in B : b <= x}, x in [base_N, 2 base_N]
  std::vector<std::uint32_t> rank(base_N + 1, 0);
  for (std::uint64_t b : B) rank[b - base_N] = 1;
  for (std::size_t i = 1; i < rank.size(); ++i) rank[i] += rank[i - 1];
  const std::uint64_t bmin = B.front(), bmax = B.back();
  const double dd = delta.value();
  const long rows = static_cast<long>(A.size());
  std::uint64_t hits_total = 0, work_total = 0;

#pragma omp parallel
  {
    std::vector<std::uint64_t> mult(out.multiplicity.size(), 0);
    std::uint64_t hits = 0, work = 0;
#pragma omp for schedule(dynamic, 16) nowait
    for (long r = 0; r < rows; ++r) {
      const std::uint64_t a = A[r];
      const double lo_root = std::sqrt(static_cast<double>(a) * static_cast<double>(bmin));
      const double hi_root = std::sqrt(static_cast<double>(a) * static_cast<double>(bmax));
      const auto l_first = static_cast<std::uint64_t>(std::max(1.0, std::floor(lo_root - dd)));
      const auto l_last = static_cast<std::uint64_t>(std::ceil(hi_root + dd));
      const std::uint64_t windows = l_last - l_first + 1;
      if (B.size() <= windows) {
        tally_row_pairs(a, B, delta, out.l_offset, mult, hits);
        work += B.size();
        continue;
      }
      work += windows;
      for (std::uint64_t l = l_first; l <= l_last; ++l) {
        const std::uint64_t b0 = std::max(first_b_above(a, l, dd, delta), bmin);
        const std::uint64_t b1 = std::min(last_b_below(a, l, dd, delta), bmax);
        if (b0 > b1) continue;
        const std::uint64_t count = rank[b1 - base_N] - rank[b0 - 1 - base_N];
        mult[l - out.l_offset] += count;
        if (delta.at_most_half()) hits += count;
      }
    }
#pragma omp critical
    {
      for (std::size_t i = 0; i < mult.size(); ++i) out.multiplicity[i] += mult[i];
      hits_total += hits;
      work_total += work;
    }
  }
  // Above 1/2 every pair is within Delta of its nearest integer.
  out.hit_pairs = delta.at_most_half() ? hits_total : static_cast<std::uint64_t>(A.size()) * B.size();
  out.work = work_total;
  return out;
}

FloatRecount float_recount(std::span<const std::uint64_t> A, std::span<const std::uint64_t> B,
                           const ExactDelta& delta, double margin) {
  FloatRecount out;
  const double dd = delta.value();
  const long rows = static_cast<long>(A.size());
  std::uint64_t float_hits = 0, compared = 0, disagreements = 0;
  double min_margin = 1.0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : float_hits, compared, disagreements) \
    reduction(min : min_margin)
  for (long r = 0; r < rows; ++r) {
    const std::uint64_t a = A[r];
    for (std::uint64_t b : B) {
      const std::uint64_t ab = a * b;
      const double t = std::sqrt(static_cast<double>(ab));
      const double dist = distance_to_nearest(t);
      const bool float_hit = dist < dd;
      const double m = std::fabs(dist - dd);
      float_hits += float_hit ? 1 : 0;
      min_margin = std::min(min_margin, m);
      if (m <= margin) continue;
      ++compared;
      const std::uint64_t s = isqrt(ab);
      const bool exact_hit = in_window(ab, s, delta) || in_window(ab, s + 1, delta);
      disagreements += exact_hit != float_hit ? 1 : 0;
    }
  }
  out.float_hits = float_hits;
  out.compared = compared;
  out.disagreements = disagreements;
  out.min_margin = min_margin;
  return out;
}

std::uint64_t quadruple_count(std::uint64_t M, std::uint64_t N, double theta, double alpha, double beta) {
  std::vector<double> xs;
  xs.reserve(M * M);
  for (std::uint64_t m1 = M; m1 < 2 * M; ++m1)
    for (std::uint64_t m2 = M; m2 < 2 * M; ++m2) xs.push_back(ratio_power(m2, m1, alpha));
  std::sort(xs.begin(), xs.end());
  const long n_rows = static_cast<long>(N);
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
  for (long i = 0; i < n_rows; ++i) {
    const std::uint64_t n1 = N + static_cast<std::uint64_t>(i);
    for (std::uint64_t n2 = N; n2 < 2 * N; ++n2) {
      const double y = ratio_power(n2, n1, beta);
      auto close = [&](double x) { return std::fabs(x - y) < theta; };
      // Binary search to the neighbourhood, then settle the ends with the
      // same predicate the reference uses.
      auto lo = std::upper_bound(xs.begin(), xs.end(), y - theta);
      while (lo != xs.begin() && close(*(lo - 1))) --lo;
      while (lo != xs.end() && *lo < y && !close(*lo)) ++lo;
      auto hi = std::lower_bound(lo, xs.end(), y + theta);
      while (hi != xs.end() && close(*hi)) ++hi;
      while (hi != lo && !close(*(hi - 1))) --hi;
      total += static_cast<std::uint64_t>(hi - lo);
    }
  }
  return total;
}

std::uint64_t pair_count(std::span<const std::uint64_t> B, double width) {
  std::vector<double> roots(B.size());
  for (std::size_t i = 0; i < B.size(); ++i) roots[i] = std::sqrt(static_cast<double>(B[i]));
  std::uint64_t total = 0;
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    while (std::fabs(roots[i] - roots[lo]) >= width) ++lo;
    if (hi < i) hi = i;
    while (hi + 1 < roots.size() && std::fabs(roots[hi + 1] - roots[i]) < width) ++hi;
    total += hi - lo + 1;
  }
  return total;
}

std::vector<std::complex<double>> bilinear_sums(std::uint64_t H0, std::span<const std::uint64_t> A,
                                                std::span<const std::uint64_t> B, std::uint64_t d) {
  const long rows = static_cast<long>(A.size());
  // partial[r * H0 + j] holds the row-r contribution for h = H0 + 1 + j.
  std::vector<std::complex<double>> partial(A.size() * H0);
#pragma omp parallel for schedule(dynamic, 8)
  for (long r = 0; r < rows; ++r) {
    std::vector<KahanComplex> acc(H0);
    for (std::uint64_t b : B) {
      const long double root = std::sqrt(static_cast<long double>(A[r]) * static_cast<long double>(b));
      for (std::uint64_t j = 0; j < H0; ++j) {
        double c, s;
        unit_phase(H0 + 1 + j, root, d, c, s);
        acc[j].add(c, s);
      }
    }
    for (std::uint64_t j = 0; j < H0; ++j) partial[r * H0 + j] = acc[j].value();
  }
  std::vector<std::complex<double>> out(H0);
  for (std::uint64_t j = 0; j < H0; ++j) {
    KahanComplex acc;
    for (long r = 0; r < rows; ++r) acc.add(partial[r * H0 + j].real(), partial[r * H0 + j].imag());
    out[j] = acc.value();
  }
  return out;
}

namespace serial {

WindowTally window_tally(std::span<const std::uint64_t> A, std::span<const std::uint64_t> B,
                         std::uint64_t base_N, const ExactDelta& delta) {
  check_window_inputs(A, B, base_N);
  WindowTally out;
  out.l_offset = base_N - 1;
  out.multiplicity.assign(base_N + 4, 0);
  for (std::uint64_t a : A) tally_row_pairs(a, B, delta, out.l_offset, out.multiplicity, out.hit_pairs);
  out.work = static_cast<std::uint64_t>(A.size()) * B.size();
  return out;
}

std::uint64_t quadruple_count(std::uint64_t M, std::uint64_t N, double theta, double alpha, double beta) {
  std::uint64_t total = 0;
  for (std::uint64_t m1 = M; m1 < 2 * M; ++m1)
    for (std::uint64_t m2 = M; m2 < 2 * M; ++m2) {
      const double x = ratio_power(m2, m1, alpha);
      for (std::uint64_t n1 = N; n1 < 2 * N; ++n1)
        for (std::uint64_t n2 = N; n2 < 2 * N; ++n2)
          if (std::fabs(x - ratio_power(n2, n1, beta)) < theta) ++total;
    }
  return total;
}

std::uint64_t pair_count(std::span<const std::uint64_t> B, double width) {
  std::uint64_t total = 0;
  for (std::uint64_t b : B)
    for (std::uint64_t b1 : B)
      if (std::fabs(std::sqrt(static_cast<double>(b)) - std::sqrt(static_cast<double>(b1))) < width) ++total;
  return total;
}

std::vector<std::complex<double>> bilinear_sums(std::uint64_t H0, std::span<const std::uint64_t> A,
                                                std::span<const std::uint64_t> B, std::uint64_t d) {
  std::vector<std::complex<double>> out(H0);
  for (std::uint64_t j = 0; j < H0; ++j) {
    KahanComplex acc;
    for (std::uint64_t a : A)
      for (std::uint64_t b : B) {
        double c, s;
        unit_phase(H0 + 1 + j, std::sqrt(static_cast<long double>(a) * static_cast<long double>(b)), d, c, s);
        acc.add(c, s);
      }
    out[j] = acc.value();
  }
  return out;
}

}  // namespace serial

}  // namespace nearsq::kernels
