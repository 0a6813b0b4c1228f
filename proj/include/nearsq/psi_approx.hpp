#pragma once

#include <complex>
#include <span>
#include <vector>

namespace nearsq {

/// Trigonometric approximation of psi(t) = {t} - 1/2 with frequencies
/// 0 < |h| <= H, together with a nonnegative error kernel:
///
///   |psi(t) - sum u(h) e(ht)| <= sum_{|h| <= H} v(h) e(ht).
///
/// Vaaler's construction: u(h) = i phi(h/(H+1)) / (2 pi h) with
/// phi(x) = pi x (1 - x) cot(pi x) + x, and v(h) = (1 - |h|/(H+1)) / (2H + 2),
/// which makes the kernel a scaled Fejer kernel.
struct PsiApproximation {
  int H = 0;
  std::vector<std::complex<double>> u;  // u[h - 1], h = 1..H; u(-h) = conj u(h)
  std::vector<double> v;                // v[h], h = 0..H; v(-h) = v(h)
  double c1 = 0.0;                      // max |h u(h)|
  double c2 = 0.0;                      // max H |v(h)|

  std::complex<double> u_at(int h) const;
  double v_at(int h) const;

  // sum_{0<|h|<=H} u(h) e(ht), real by conjugate symmetry.
  double main(double t) const;
  // sum_{|h|<=H} v(h) e(ht)
  double kernel(double t) const;
};

// Throws Error(InvalidArgument) for H < 2.
PsiApproximation build_psi_approximation(int H);

struct PsiGridStats {
  double sup_kernel = 0.0;
  double min_kernel = 0.0;
  double max_error = 0.0;      // max |psi - main|
  double mean_error = 0.0;     // mean |psi - main|
  double max_violation = 0.0;  // max (|psi - main| - kernel), <= 0 when the envelope holds
};

PsiGridStats psi_grid_stats(const PsiApproximation& approx, std::span<const double> ts);

// M equispaced points j/M, j = 0..M-1.
std::vector<double> equispaced_grid(int M);

}  // namespace nearsq
