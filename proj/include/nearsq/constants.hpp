#pragma once

#include <span>
#include <vector>

#include "nearsq/rational.hpp"
#include "nearsq/sieve_functions.hpp"

namespace nearsq {

// Sizes |A| ~ N^eta, |B| ~ N^beta, window Delta = N^-delta, slack eps.
struct RegimeParams {
  Rational eta{1};
  Rational beta{1};
  Rational delta{0};
  Rational eps{0};
};

// (eta+beta)/2 - 2/3 - 2 delta/3
Rational level_numerator(const RegimeParams& p);

// eta + beta >= 4(1 + delta)/3 + eps
bool satisfies_hypothesis(const RegimeParams& p);

// floor(2 / ((eta+beta)/2 - 2/3 - 2 delta/3)), exact.
// Throws Error(Regime) when the denominator is not positive.
int k_min(const RegimeParams& p);

// Level of distribution exponent
//   ((eta+beta)/2 - 2/3 - 2 delta/3) / (eta + beta - delta) - eps.
// Throws Error(Regime) when the result is not positive.
double alpha_level(const RegimeParams& p);
Rational alpha_level_exact(const RegimeParams& p);

// Admissible delta for a given k, clipped to (0, 1/2).
struct DeltaRange {
  Rational lo;
  Rational hi;
  bool lo_inclusive = true;  // false once clipped at 0
  bool empty = false;

  bool contains(const Rational& delta) const;
};

DeltaRange delta_range(int k, const Rational& eta, const Rational& beta);

// Lower-bound constant C(eta, beta, delta) reconstructed as
// 2 (k+1) e^{-gamma} f(alpha (k+1)(eta + beta - delta)).
struct LowerBoundConstant {
  int k = 0;
  double alpha = 0.0;
  Rational sieve_argument_exact;
  double sieve_argument = 0.0;
  double f_at_argument = 0.0;         // from the continuation table
  double f_closed_at_argument = 0.0;  // from the closed form, when argument <= 6
  double constant_value = 0.0;
  double quadrature_error = 0.0;      // |table - closed form|
  bool reconstructed = true;
};

// `alpha_eps` is the slack subtracted inside alpha; it is independent of the
// hypothesis slack p.eps. Throws Error(Regime) when the hypothesis fails or
// the sieve argument is not above 2.
LowerBoundConstant theorem2_constant(const RegimeParams& p, const SieveFunctionTable& table,
                                     const Rational& alpha_eps = Rational(0));

/// C(delta, k) of the weighted sieve, k in {4, 5}, 0 < delta < 1/10.
///
/// `value` evaluates the simplified closed formula, with upper logarithm
/// log((4-10d)(5-10d)/(s+1) - 1); `value_unsimplified` evaluates the double
/// integrals that precede that simplification. The two disagree because that
/// logarithm is not the antiderivative of 1/(t(5-10 delta-t)); `flagged`
/// records a discrepancy above 1e-6 and `authoritative()` then returns the
/// unsimplified value.
struct WeightedConstant {
  double delta = 0.0;
  int k = 0;
  double value = 0.0;
  double value_unsimplified = 0.0;
  double discrepancy = 0.0;
  bool flagged = false;
  double quad_error = 0.0;
  double lower_coeff = 0.0;             // 6/(1-2d) (log(4-10d) + ...)
  double upper_coeff = 0.0;             // 30 (int ... + int int ...), unsimplified
  double upper_coeff_simplified = 0.0;  // 6/(1-2d) (log(...) + int ...)

  double authoritative() const { return flagged ? value_unsimplified : value; }
};

inline constexpr double kDiscrepancyFlag = 1e-6;

WeightedConstant C_delta_k(double delta, int k, double tol = 1e-9);

// Same evaluation over a delta grid; result order matches `deltas`.
std::vector<WeightedConstant> scan_C_delta_k(int k, std::span<const double> deltas, double tol = 1e-9);

// The two weighted-sieve ingredients taken straight from the sieve
// functions: lower = 15 e^{-g} f(5 - 10 delta) and
// upper = 15 e^{-g} int_k^15 F(5 - 10 delta - 15/u) du/u.
// C(delta, k) = lower - upper/2. Accepts 4 <= k <= 15.
struct SieveBudget {
  double lower_coeff = 0.0;
  double upper_coeff = 0.0;
  double error_estimate = 0.0;

  double combined() const { return lower_coeff - 0.5 * upper_coeff; }
};

SieveBudget weighted_sieve_budget(double delta, int k, const SieveFunctionTable& table, double tol = 1e-9);

}  // namespace nearsq
