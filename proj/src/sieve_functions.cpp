#include "nearsq/sieve_functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "nearsq/error.hpp"
#include "nearsq/quadrature.hpp"

namespace nearsq {

long double exp_gamma() { return std::exp(kEulerGamma); }

namespace {

double two_exp_gamma() { return static_cast<double>(2.0L * exp_gamma()); }

double log_ratio_kernel(double s) { return std::log(s - 1.0) / s; }

// G(x) = int_2^x log(s-1)/s ds
double inner_integral(double x, double tol) {
  return integrate(log_ratio_kernel, 2.0, x, tol).value;
}

}  // namespace

namespace branches {

double F_elementary(double u) { return two_exp_gamma() / u; }

double F_integral(double u, double tol) {
  return two_exp_gamma() / u * (1.0 + inner_integral(u - 1.0, tol));
}

double f_logarithmic(double u) { return two_exp_gamma() * std::log(u - 1.0) / u; }

double f_integral(double u, double tol) {
  auto outer = [tol](double t) { return inner_integral(t - 1.0, 0.1 * tol) / t; };
  const double nested = integrate(outer, 3.0, u - 1.0, tol).value;
  return two_exp_gamma() / u * (std::log(u - 1.0) + nested);
}

}  // namespace branches

double F_closed(double u, double tol) {
  if (!(u > 0.0 && u <= 5.0))
    fail(ErrorKind::Range, "F_closed defined on (0, 5], got u = " + std::to_string(u));
  return u <= 3.0 ? branches::F_elementary(u) : branches::F_integral(u, tol);
}

double f_closed(double u, double tol) {
  if (!(u > 0.0 && u <= 6.0))
    fail(ErrorKind::Range, "f_closed defined on (0, 6], got u = " + std::to_string(u));
  if (u <= 2.0) return 0.0;
  if (u <= 4.0) return branches::f_logarithmic(u);
  return branches::f_integral(u, tol);
}

namespace {

struct MarchResult {
  std::vector<long double> F, f;
};

// Integral over [x_o, x_{o+1}] of the cubic through x_0..x_3, unit spacing.
constexpr long double kStencil[3][4] = {
    {9.0L / 24, 19.0L / 24, -5.0L / 24, 1.0L / 24},
    {-1.0L / 24, 13.0L / 24, 13.0L / 24, -1.0L / 24},
    {1.0L / 24, -5.0L / 24, 19.0L / 24, 9.0L / 24},
};

// Index k <-> u = 1 + k/n; total points last + 1.
MarchResult march(long n, long last) {
  MarchResult r;
  r.F.assign(last + 1, 0.0L);
  r.f.assign(last + 1, 0.0L);
  const long double h = 1.0L / n;
  const long double c = 2.0L * exp_gamma();
  for (long k = 0; k <= std::min(n, last); ++k) {
    r.F[k] = c / (1.0L + k * h);
    r.f[k] = 0.0L;
  }
  long double uF = 2.0L * r.F[n];
  long double uf = 0.0L;
  for (long i = n + 1; i <= last; ++i) {
    const long j = i - n;  // delayed interval is [j-1, j]
    const long cell = (j - 1) / n;
    const long s = std::clamp(j - 2, cell * n, (cell + 1) * n - 3);
    const long o = j - 1 - s;
    long double sf = 0.0L, sF = 0.0L;
    for (int q = 0; q < 4; ++q) {
      sf += kStencil[o][q] * r.f[s + q];
      sF += kStencil[o][q] * r.F[s + q];
    }
    uF += h * sf;
    uf += h * sF;
    const long double u = 1.0L + i * h;
    r.F[i] = uF / u;
    r.f[i] = uf / u;
  }
  return r;
}

}  // namespace

SieveFunctionTable SieveFunctionTable::build(double u_max, double step, double tol) {
  if (!(u_max >= 6.0)) fail(ErrorKind::InvalidArgument, "sieve table needs u_max >= 6");
  if (!(step > 0.0 && step <= 0.01)) fail(ErrorKind::InvalidArgument, "sieve table step must be in (0, 0.01]");
  if (!(tol > 0.0)) fail(ErrorKind::InvalidArgument, "sieve table tolerance must be positive");
  const double per_unit = 1.0 / step;
  const long n = std::lround(per_unit);
  if (std::fabs(per_unit - static_cast<double>(n)) > 1e-9 * per_unit)
    fail(ErrorKind::InvalidArgument, "sieve table step must divide 1 exactly");

  const long last = std::lround((u_max - 1.0) * n);
  MarchResult coarse = march(n, last);
  MarchResult fine = march(2 * n, 2 * last);

  long double worst = 0.0L;
  for (long k = 0; k <= last; ++k) {
    worst = std::max(worst, std::fabs(coarse.F[k] - fine.F[2 * k]));
    worst = std::max(worst, std::fabs(coarse.f[k] - fine.f[2 * k]));
  }
  const double estimate = static_cast<double>(worst * 16.0L / 15.0L);
  if (estimate > tol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "sieve table step %.3g gives estimated error %.3g > tol %.3g", step,
                  estimate, tol);
    fail(ErrorKind::Accuracy, buf);
  }

  SieveFunctionTable t;
  t.per_unit_ = n;
  t.step_ = 1.0 / static_cast<double>(n);
  t.u_max_ = 1.0 + static_cast<double>(last) / static_cast<double>(n);
  t.tol_ = tol;
  t.error_estimate_ = estimate;
  t.F_ = std::move(coarse.F);
  t.f_ = std::move(coarse.f);
  return t;
}

std::size_t SieveFunctionTable::sample_count() const { return F_.size() - static_cast<std::size_t>(per_unit_); }

double SieveFunctionTable::sample_u(std::size_t i) const {
  return 2.0 + static_cast<double>(i) / static_cast<double>(per_unit_);
}

double SieveFunctionTable::sample_F(std::size_t i) const { return static_cast<double>(F_[i + per_unit_]); }

double SieveFunctionTable::sample_f(std::size_t i) const { return static_cast<double>(f_[i + per_unit_]); }

double SieveFunctionTable::interpolate(const std::vector<long double>& values, double u) const {
  const long last = static_cast<long>(values.size()) - 1;
  const long double x = (static_cast<long double>(u) - 1.0L) * per_unit_;
  const long i = std::clamp(static_cast<long>(std::floor(x)), 0L, last);
  if (static_cast<long double>(i) == x) return static_cast<double>(values[i]);
  const long cell = std::min(i / per_unit_, last / per_unit_ - 1);
  const long s = std::clamp(i - 1, cell * per_unit_, (cell + 1) * per_unit_ - 3);
  long double sum = 0.0L;
  for (int a = 0; a < 4; ++a) {
    long double w = 1.0L;
    for (int b = 0; b < 4; ++b)
      if (b != a) w *= (x - (s + b)) / static_cast<long double>(a - b);
    sum += w * values[s + a];
  }
  return static_cast<double>(sum);
}

double SieveFunctionTable::F(double u) const {
  if (!(u > 0.0 && u <= u_max_))
    fail(ErrorKind::Range, "F query outside (0, u_max]: " + std::to_string(u));
  if (u <= 2.0) return branches::F_elementary(u);
  return interpolate(F_, u);
}

double SieveFunctionTable::f(double u) const {
  if (!(u > 0.0 && u <= u_max_))
    fail(ErrorKind::Range, "f query outside (0, u_max]: " + std::to_string(u));
  if (u <= 2.0) return 0.0;
  return interpolate(f_, u);
}

void SieveFunctionTable::write_csv(std::ostream& out) const {
  out << "u,F,f\n";
  char buf[128];
  for (std::size_t i = 0; i < sample_count(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", sample_u(i), sample_F(i), sample_f(i));
    out << buf;
  }
}

MertensProduct mertens_V(double z, const PrimeTable& table) {
  if (!(z >= 2.0)) fail(ErrorKind::InvalidArgument, "mertens_V needs z >= 2");
  if (z > static_cast<double>(table.limit()) + 1.0)
    fail(ErrorKind::Coverage, "prime table limit " + std::to_string(table.limit()) +
                                  " does not cover primes below z = " + std::to_string(z));
  long double product = 1.0L;
  for (std::uint32_t p : table.primes()) {
    if (static_cast<double>(p) >= z) break;
    product *= 1.0L - 1.0L / p;
  }
  MertensProduct m;
  m.value = static_cast<double>(product);
  m.asymptotic = static_cast<double>(std::exp(-kEulerGamma) / std::log(static_cast<long double>(z)));
  return m;
}

}  // namespace nearsq
