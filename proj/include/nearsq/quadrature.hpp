#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "nearsq/error.hpp"

namespace nearsq {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t subdivisions = 0;
};

struct QuadratureOptions {
  double tolerance = 1e-9;  // absolute
  std::size_t max_subdivisions = 1'000'000;
  int max_depth = 50;
};

/// Adaptive Simpson quadrature on [a, b] with absolute tolerance.
///
/// Each panel is accepted once |S(left) + S(right) - S(whole)| / 15 is below
/// its share of the tolerance; the accepted value carries the Richardson
/// correction. The reported error estimate is the sum of accepted panel
/// estimates, so it never exceeds `opts.tolerance` on success. Throws
/// Error(Accuracy) when the subdivision budget or depth limit is exhausted.
template <class Fn>
QuadratureResult integrate(Fn&& fn, double a, double b, const QuadratureOptions& opts) {
  QuadratureResult out;
  if (a == b) return out;
  if (!(a < b)) {
    QuadratureResult r = integrate(fn, b, a, opts);
    r.value = -r.value;
    return r;
  }
  if (!(opts.tolerance > 0)) fail(ErrorKind::InvalidArgument, "quadrature tolerance must be positive");

  struct Panel {
    double a, b, fa, fm, fb, whole, tol;
    int depth;
  };
  auto simpson = [](double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  };

  const double m = 0.5 * (a + b);
  const double fa = fn(a), fm = fn(m), fb = fn(b);
  std::vector<Panel> stack;
  stack.push_back({a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), opts.tolerance, 0});

  double sum = 0.0, comp = 0.0;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + mid), rm = 0.5 * (mid + p.b);
    const double flm = fn(lm), frm = fn(rm);
    const double left = simpson(p.a, mid, p.fa, flm, p.fm);
    const double right = simpson(mid, p.b, p.fm, frm, p.fb);
    const double diff = left + right - p.whole;
    const double err = std::fabs(diff) / 15.0;
    ++out.subdivisions;
    if (err <= p.tol || (p.depth >= 4 && err <= 1e-15 * std::fabs(left + right))) {
      // Kahan-compensated accumulation of accepted panels.
      const double y = (left + right + diff / 15.0) - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      out.error_estimate += err;
      continue;
    }
    if (p.depth >= opts.max_depth || out.subdivisions >= opts.max_subdivisions)
      fail(ErrorKind::Accuracy, "adaptive Simpson did not converge on [" + std::to_string(a) +
                                    ", " + std::to_string(b) + "]");
    stack.push_back({mid, p.b, p.fm, frm, p.fb, right, 0.5 * p.tol, p.depth + 1});
    stack.push_back({p.a, mid, p.fa, flm, p.fm, left, 0.5 * p.tol, p.depth + 1});
  }
  out.value = sum;
  return out;
}

template <class Fn>
QuadratureResult integrate(Fn&& fn, double a, double b, double tolerance = 1e-9) {
  QuadratureOptions opts;
  opts.tolerance = tolerance;
  return integrate(fn, a, b, opts);
}

// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
// on P_n.
class GaussLegendreRule {
 public:
  explicit GaussLegendreRule(int n);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  // Composite rule with `panels` equal panels on [a, b].
  template <class Fn>
  double apply(Fn&& fn, double a, double b, int panels = 1) const {
    if (a == b) return 0.0;
    const double width = (b - a) / panels;
    long double total = 0.0L;
    for (int k = 0; k < panels; ++k) {
      const double lo = a + k * width;
      const double half = 0.5 * width, center = lo + half;
      long double s = 0.0L;
      for (std::size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * fn(center + half * nodes_[i]);
      total += half * s;
    }
    return static_cast<double>(total);
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

// Shared 64-node rule.
const GaussLegendreRule& gauss_legendre_64();

}  // namespace nearsq
