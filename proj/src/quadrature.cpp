#include "nearsq/quadrature.hpp"

#include <numbers>

namespace nearsq {

GaussLegendreRule::GaussLegendreRule(int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "Gauss-Legendre rule needs n >= 1");
  nodes_.resize(n);
  weights_.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi's initial guess for the i-th root.
    long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0L;
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(static_cast<double>(dx)) < 1e-19) break;
    }
    {
      long double p0 = 1.0L, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0L;
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
    }
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    nodes_[i] = static_cast<double>(-x);
    nodes_[n - 1 - i] = static_cast<double>(x);
    weights_[i] = weights_[n - 1 - i] = static_cast<double>(w);
  }
}

const GaussLegendreRule& gauss_legendre_64() {
  static const GaussLegendreRule rule(64);
  return rule;
}

}  // namespace nearsq
