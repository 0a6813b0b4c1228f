#include "nearsq/psi_approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nearsq/arith.hpp"
#include "nearsq/error.hpp"

namespace nearsq {

namespace {

constexpr double kPi = std::numbers::pi;

double vaaler_phi(double x) { return kPi * x * (1.0 - x) / std::tan(kPi * x) + x; }

}  // namespace

std::complex<double> PsiApproximation::u_at(int h) const {
  if (h == 0 || std::abs(h) > H) return {0.0, 0.0};
  const auto c = u[std::abs(h) - 1];
  return h > 0 ? c : std::conj(c);
}

double PsiApproximation::v_at(int h) const { return std::abs(h) > H ? 0.0 : v[std::abs(h)]; }

double PsiApproximation::main(double t) const {
  const double x = t - std::floor(t);
  // u(h) e(ht) + u(-h) e(-ht) = 2 Re(u(h) e(ht)) = -2 Im(u(h)) sin(2 pi h t) for imaginary u(h)
  double s = 0.0;
  for (int h = H; h >= 1; --h) s += -2.0 * u[h - 1].imag() * std::sin(2.0 * kPi * h * x);
  return s;
}

double PsiApproximation::kernel(double t) const {
  const double x = t - std::floor(t);
  double s = 0.0;
  for (int h = H; h >= 1; --h) s += 2.0 * v[h] * std::cos(2.0 * kPi * h * x);
  return v[0] + s;
}

PsiApproximation build_psi_approximation(int H) {
  if (H < 2) fail(ErrorKind::InvalidArgument, "psi approximation needs H >= 2");
  PsiApproximation out;
  out.H = H;
  out.u.resize(H);
  out.v.resize(H + 1);
  const double scale = H + 1.0;
  for (int h = 1; h <= H; ++h) {
    out.u[h - 1] = {0.0, vaaler_phi(h / scale) / (2.0 * kPi * h)};
    out.c1 = std::max(out.c1, h * std::abs(out.u[h - 1]));
  }
  for (int h = 0; h <= H; ++h) {
    out.v[h] = (1.0 - h / scale) / (2.0 * scale);
    out.c2 = std::max(out.c2, H * out.v[h]);
  }
  return out;
}

PsiGridStats psi_grid_stats(const PsiApproximation& approx, std::span<const double> ts) {
  PsiGridStats st;
  st.min_kernel = INFINITY;
  st.max_violation = -INFINITY;
  double sum = 0.0;
  for (double t : ts) {
    const double k = approx.kernel(t);
    const double err = std::fabs(sawtooth_psi(t) - approx.main(t));
    st.sup_kernel = std::max(st.sup_kernel, k);
    st.min_kernel = std::min(st.min_kernel, k);
    st.max_error = std::max(st.max_error, err);
    st.max_violation = std::max(st.max_violation, err - k);
    sum += err;
  }
  if (!ts.empty()) st.mean_error = sum / static_cast<double>(ts.size());
  return st;
}

std::vector<double> equispaced_grid(int M) {
  std::vector<double> ts(M);
  for (int j = 0; j < M; ++j) ts[j] = static_cast<double>(j) / M;
  return ts;
}

}  // namespace nearsq
