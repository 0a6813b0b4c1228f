#include "nearsq/expsum.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "nearsq/error.hpp"
#include "nearsq/kernels.hpp"

namespace nearsq {

const char* to_string(LemmaId id) noexcept {
  switch (id) {
    case LemmaId::L21: return "L21";
    case LemmaId::L22: return "L22";
    case LemmaId::L23: return "L23";
  }
  return "?";
}

namespace {

void finish(BoundCheckRecord& r) { r.ratio = r.bound > 0.0 ? r.measured / r.bound : INFINITY; }

}  // namespace

BoundCheckRecord quadruple_count(std::uint64_t M, std::uint64_t N, double theta, double alpha, double beta,
                                 std::uint64_t budget) {
  if (M < 1 || N < 1) fail(ErrorKind::InvalidArgument, "M and N must be >= 1");
  if (!(theta > 0.0)) fail(ErrorKind::InvalidArgument, "theta must be positive");
  if (alpha == 0.0 || beta == 0.0) fail(ErrorKind::InvalidArgument, "exponents must be nonzero");
  const double tuples = static_cast<double>(M) * M * N * N;
  if (tuples > static_cast<double>(budget))
    fail(ErrorKind::Budget, "M^2 N^2 = " + std::to_string(tuples) + " exceeds the enumeration budget");
  BoundCheckRecord r;
  r.lemma = LemmaId::L22;
  r.params = {{"M", double(M)}, {"N", double(N)}, {"theta", theta}, {"alpha", alpha}, {"beta", beta}};
  r.measured = static_cast<double>(kernels::quadruple_count(M, N, theta, alpha, beta));
  const double mn = static_cast<double>(M) * N;
  r.bound = mn * std::log(2.0 * mn) + theta * mn * mn;
  finish(r);
  return r;
}

BoundCheckRecord pair_count(const IntervalSubset& B, double X) {
  if (!(X >= 1.0)) fail(ErrorKind::InvalidArgument, "X must be >= 1");
  if (B.empty()) fail(ErrorKind::InvalidArgument, "B must be nonempty");
  BoundCheckRecord r;
  r.lemma = LemmaId::L23;
  r.params = {{"N", double(B.base_N)}, {"X", X}, {"size", double(B.size())}};
  r.measured = static_cast<double>(kernels::pair_count(B.elements, 1.0 / (2.0 * X)));
  r.bound = (1.0 + 2.0 * std::sqrt(2.0 * B.base_N) / X) * static_cast<double>(B.size());
  finish(r);
  return r;
}

BoundCheckRecord bilinear_check(std::uint64_t H0, const IntervalSubset& A, const IntervalSubset& B, std::uint64_t d,
                                bool adversarial, std::uint64_t budget) {
  if (H0 < 1 || d < 1) fail(ErrorKind::InvalidArgument, "H0 and d must be >= 1");
  if (A.base_N != B.base_N) fail(ErrorKind::InvalidArgument, "A and B must share the base N");
  const double terms = static_cast<double>(H0) * A.size() * B.size();
  if (terms > static_cast<double>(budget))
    fail(ErrorKind::Budget, "H0 |A||B| = " + std::to_string(terms) + " exceeds the enumeration budget");
  BoundCheckRecord r;
  r.lemma = LemmaId::L21;
  r.params = {{"N", double(A.base_N)},     {"H0", double(H0)}, {"d", double(d)},
              {"size_A", double(A.size())}, {"size_B", double(B.size())}, {"adversarial", adversarial ? 1.0 : 0.0}};
  const auto sums = kernels::bilinear_sums(H0, A.elements, B.elements, d);
  if (adversarial) {
    for (const auto& s : sums) r.measured += std::abs(s);
  } else {
    std::complex<double> total = 0.0;
    for (const auto& s : sums) total += s;
    r.measured = std::abs(total);
  }
  const double N = static_cast<double>(A.base_N);
  const double H1 = static_cast<double>(H0);
  const double sizes = static_cast<double>(A.size()) * B.size();
  r.bound = N * H1 * std::pow(sizes, 0.25) * (1.0 + std::sqrt(d / H1)) * std::sqrt(std::log(2.0 * N * H1));
  finish(r);
  return r;
}

}  // namespace nearsq
