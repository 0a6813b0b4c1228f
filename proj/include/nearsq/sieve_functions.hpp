#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "nearsq/arith.hpp"

namespace nearsq {

// Euler's constant to 20 significant digits.
inline constexpr long double kEulerGamma = 0.57721566490153286061L;

long double exp_gamma();

// Linear-sieve upper function F on (0, 5] from its closed forms.
// Throws Error(Range) outside (0, 5].
double F_closed(double u, double tol = 1e-12);

// Linear-sieve lower function f on (0, 6] from its closed forms.
// Throws Error(Range) outside (0, 6].
double f_closed(double u, double tol = 1e-12);

// The individual closed-form branches, evaluable at their shared endpoints
// so that branch agreement can be checked.
namespace branches {
double F_elementary(double u);                    // 2e^g/u
double F_integral(double u, double tol = 1e-12);  // 3 <= u <= 5 form
double f_logarithmic(double u);                   // 2e^g log(u-1)/u, 2 <= u <= 4
double f_integral(double u, double tol = 1e-12);  // 4 <= u <= 6 nested form
}  // namespace branches

/// Dense samples of F and f obtained by marching the delay-differential
/// system (uF)' = f(u-1), (uf)' = F(u-1) from the initial data on (0, 2].
///
/// Each step integrates the delayed values with a cubic stencil that never
/// straddles an integer (F and f lose smoothness only there), accumulating
/// in long double. A second march at half the step gives a Richardson error
/// estimate. Queries between grid points use the same cell-local cubic.
class SieveFunctionTable {
 public:
  // Requires u_max >= 6, 0 < step <= 0.01 with 1/step an integer, tol > 0.
  // Throws Error(Accuracy) when the estimated marching error exceeds tol.
  static SieveFunctionTable build(double u_max = 12.0, double step = 1e-3, double tol = 1e-9);

  double u_max() const { return u_max_; }
  double step() const { return step_; }
  double tolerance() const { return tol_; }
  double error_estimate() const { return error_estimate_; }

  // Grid samples on [2, u_max].
  std::size_t sample_count() const;
  double sample_u(std::size_t i) const;
  double sample_F(std::size_t i) const;
  double sample_f(std::size_t i) const;

  // Throws Error(Range) for u <= 0 or u > u_max.
  double F(double u) const;
  double f(double u) const;

  // CSV with header "u,F,f" at grid resolution.
  void write_csv(std::ostream& out) const;

 private:
  SieveFunctionTable() = default;
  double interpolate(const std::vector<long double>& values, double u) const;

  double u_max_ = 0.0;
  double step_ = 0.0;
  double tol_ = 0.0;
  double error_estimate_ = 0.0;
  long per_unit_ = 0;  // grid points per unit interval
  // Index 0 is u = 1.
  std::vector<long double> F_;
  std::vector<long double> f_;
};

struct MertensProduct {
  double value = 1.0;       // prod_{p < z} (1 - 1/p)
  double asymptotic = 0.0;  // e^{-gamma} / log z
};

// Throws Error(Coverage) if the table does not reach every prime below z.
MertensProduct mertens_V(double z, const PrimeTable& table);

}  // namespace nearsq
