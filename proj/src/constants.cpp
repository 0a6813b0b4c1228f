#include "nearsq/constants.hpp"

#include <cmath>
#include <exception>
#include <string>

#include "nearsq/error.hpp"
#include "nearsq/quadrature.hpp"

namespace nearsq {

namespace {

void check_exponents(const RegimeParams& p) {
  if (!(p.eta > Rational(0) && p.eta <= Rational(1)))
    fail(ErrorKind::InvalidArgument, "eta must lie in (0, 1], got " + p.eta.str());
  if (!(p.beta > Rational(0) && p.beta <= Rational(1)))
    fail(ErrorKind::InvalidArgument, "beta must lie in (0, 1], got " + p.beta.str());
  if (p.delta < Rational(0) || p.delta >= Rational(1, 2))
    fail(ErrorKind::InvalidArgument, "delta must lie in [0, 1/2), got " + p.delta.str());
  if (p.eps < Rational(0)) fail(ErrorKind::InvalidArgument, "eps must be >= 0");
}

}  // namespace

Rational level_numerator(const RegimeParams& p) {
  return (p.eta + p.beta) / Rational(2) - Rational(2, 3) - Rational(2, 3) * p.delta;
}

bool satisfies_hypothesis(const RegimeParams& p) {
  return p.eta + p.beta >= Rational(4, 3) * (Rational(1) + p.delta) + p.eps;
}

int k_min(const RegimeParams& p) {
  const Rational d = level_numerator(p);
  if (d <= Rational(0))
    fail(ErrorKind::Regime, "(eta+beta)/2 - 2/3 - 2delta/3 = " + d.str() + " is not positive");
  return static_cast<int>((Rational(2) / d).floor());
}

Rational alpha_level_exact(const RegimeParams& p) {
  const Rational spread = p.eta + p.beta - p.delta;
  if (spread <= Rational(0)) fail(ErrorKind::Regime, "eta + beta - delta must be positive");
  const Rational alpha = level_numerator(p) / spread - p.eps;
  if (alpha <= Rational(0)) fail(ErrorKind::Regime, "alpha = " + alpha.str() + " is not positive");
  return alpha;
}

double alpha_level(const RegimeParams& p) { return alpha_level_exact(p).to_double(); }

bool DeltaRange::contains(const Rational& delta) const {
  if (empty) return false;
  const bool above = lo_inclusive ? delta >= lo : delta > lo;
  return above && delta < hi;
}

DeltaRange delta_range(int k, const Rational& eta, const Rational& beta) {
  if (k < 1) fail(ErrorKind::InvalidArgument, "delta_range needs k >= 1");
  const Rational base = Rational(3, 4) * (eta + beta) - Rational(1);
  DeltaRange r;
  r.lo = base - Rational(3, k);
  r.hi = base - Rational(3, k + 1);
  if (r.lo <= Rational(0)) {
    r.lo = Rational(0);
    r.lo_inclusive = false;
  }
  if (r.hi > Rational(1, 2)) r.hi = Rational(1, 2);
  r.empty = r.lo >= r.hi;
  return r;
}

LowerBoundConstant theorem2_constant(const RegimeParams& p, const SieveFunctionTable& table,
                                     const Rational& alpha_eps) {
  check_exponents(p);
  if (!satisfies_hypothesis(p))
    fail(ErrorKind::Regime, "hypothesis eta + beta >= 4(1+delta)/3 + eps fails");
  LowerBoundConstant out;
  out.k = k_min(p);
  RegimeParams for_alpha = p;
  for_alpha.eps = alpha_eps;
  const Rational alpha = alpha_level_exact(for_alpha);
  out.alpha = alpha.to_double();
  out.sieve_argument_exact = alpha * Rational(out.k + 1) * (p.eta + p.beta - p.delta);
  out.sieve_argument = out.sieve_argument_exact.to_double();
  if (out.sieve_argument_exact <= Rational(2))
    fail(ErrorKind::Regime, "sieve argument " + out.sieve_argument_exact.str() + " <= 2, f vanishes");
  if (out.sieve_argument > table.u_max())
    fail(ErrorKind::Range, "sieve argument beyond the sieve table horizon");

  out.f_at_argument = table.f(out.sieve_argument);
  if (out.sieve_argument <= 6.0) {
    out.f_closed_at_argument = f_closed(out.sieve_argument);
    out.quadrature_error = std::fabs(out.f_at_argument - out.f_closed_at_argument);
  } else {
    out.f_closed_at_argument = out.f_at_argument;
    out.quadrature_error = table.error_estimate();
  }
  out.constant_value =
      static_cast<double>(2.0L * (out.k + 1) * std::exp(-kEulerGamma) * out.f_at_argument);
  return out;
}

WeightedConstant C_delta_k(double delta, int k, double tol) {
  if (k != 4 && k != 5) fail(ErrorKind::InvalidArgument, "C(delta, k) is defined for k = 4, 5");
  if (!(delta > 0.0 && delta < 0.1))
    fail(ErrorKind::Regime, "C(delta, k) needs 0 < delta < 1/10, got " + std::to_string(delta));
  if (!(tol > 0.0)) fail(ErrorKind::InvalidArgument, "tolerance must be positive");

  const double A = 4.0 - 10.0 * delta;  // f argument minus one
  const double c = 5.0 - 10.0 * delta;  // f argument
  const double top = 3.0 - 10.0 * delta;
  const double lower_t = c - 15.0 / k;
  const double prefactor = 6.0 / (1.0 - 2.0 * delta);
  auto g = [](double s) { return std::log(s - 1.0) / s; };
  const double inner_tol = 0.01 * tol;
  auto G = [&](double x) { return integrate(g, 2.0, x, inner_tol); };

  WeightedConstant out;
  out.delta = delta;
  out.k = k;
  double err = 0.0;

  // Lower term after exchanging the order of integration.
  const auto lower_swap = integrate([&](double s) { return g(s) * std::log(A / (s + 1.0)); }, 2.0, top, tol);
  err += prefactor * lower_swap.error_estimate;
  out.lower_coeff = prefactor * (std::log(A) + lower_swap.value);

  // Upper term in the simplified closed form.
  const auto upper_simplified =
      integrate([&](double s) { return g(s) * std::log(A * c / (s + 1.0) - 1.0); }, 2.0, top, tol);
  err += 0.5 * prefactor * upper_simplified.error_estimate;
  out.upper_coeff_simplified = prefactor * (std::log(A / lower_t * 15.0 / k) + upper_simplified.value);

  out.value = out.lower_coeff - 0.5 * out.upper_coeff_simplified;

  // Unsimplified: nested integrals in t, before any simplification.
  const auto lower_nested = integrate([&](double t) { return G(t - 1.0).value / t; }, 3.0, A, tol);
  const auto upper_direct = integrate([&](double t) { return 1.0 / (t * (c - t)); }, lower_t, A, tol);
  const auto upper_nested =
      integrate([&](double t) { return G(t - 1.0).value / (t * (c - t)); }, 3.0, A, tol);
  err += prefactor * lower_nested.error_estimate + 15.0 * (upper_direct.error_estimate + upper_nested.error_estimate);
  out.upper_coeff = 30.0 * (upper_direct.value + upper_nested.value);
  const double lower_unsimplified = prefactor * (std::log(A) + lower_nested.value);
  out.value_unsimplified = lower_unsimplified - 0.5 * out.upper_coeff;

  out.discrepancy = std::fabs(out.value - out.value_unsimplified);
  out.flagged = out.discrepancy > kDiscrepancyFlag;
  out.quad_error = err;
  return out;
}

std::vector<WeightedConstant> scan_C_delta_k(int k, std::span<const double> deltas, double tol) {
  std::vector<WeightedConstant> out(deltas.size());
  const long n = static_cast<long>(deltas.size());
  // Exceptions cannot cross the parallel region; capture the first one.
  std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = C_delta_k(deltas[i], k, tol);
    } catch (...) {
#pragma omp critical
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

SieveBudget weighted_sieve_budget(double delta, int k, const SieveFunctionTable& table, double tol) {
  if (k < 4 || k > 15) fail(ErrorKind::InvalidArgument, "weighted sieve budget needs 4 <= k <= 15");
  if (!(delta > 0.0 && delta < 0.1))
    fail(ErrorKind::Regime, "weighted sieve needs 0 < delta < 1/10 (4 < 5(1-2delta) < 6)");
  const long double scale = 15.0L * std::exp(-kEulerGamma);
  const double c = 5.0 - 10.0 * delta;
  SieveBudget out;
  out.lower_coeff = static_cast<double>(scale * table.f(c));
  const auto upper = integrate([&](double u) { return table.F(c - 15.0 / u) / u; }, static_cast<double>(k), 15.0, tol);
  out.upper_coeff = static_cast<double>(scale * upper.value);
  out.error_estimate = static_cast<double>(scale * upper.error_estimate) + table.error_estimate();
  return out;
}

}  // namespace nearsq
