#include <doctest.h>

#include <cmath>

#include "nearsq/error.hpp"
#include "nearsq/quadrature.hpp"

using namespace nearsq;

namespace {

double midpoint(double (*fn)(double), double a, double b, long n) {
  const double h = (b - a) / n;
  long double s = 0.0L;
  for (long i = 0; i < n; ++i) s += fn(a + (i + 0.5) * h);
  return static_cast<double>(s * h);
}

double log_ratio(double t) { return std::log(t - 1.0) / t; }

}  // namespace

TEST_CASE("simple integrals") {
  const auto r = integrate([](double t) { return t; }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.error_estimate >= 0.0);
  CHECK(r.error_estimate <= 1e-9);

  const auto empty = integrate([](double t) { return t; }, 2.0, 2.0);
  CHECK(empty.value == 0.0);
  CHECK(empty.error_estimate == 0.0);

  const auto reversed = integrate([](double t) { return t * t; }, 1.0, 0.0);
  CHECK(reversed.value == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("log(t-1)/t on [2,3] against a million-node midpoint rule") {
  const auto r = integrate(log_ratio, 2.0, 3.0, 1e-12);
  const double oracle = midpoint(log_ratio, 2.0, 3.0, 1'000'000);
  CHECK(std::fabs(r.value - oracle) < 1e-6);
  CHECK(r.error_estimate <= 1e-12);
}

TEST_CASE("adaptive Simpson and 64-node Gauss-Legendre agree") {
  const auto& gl = gauss_legendre_64();
  CHECK(gl.size() == 64);
  double wsum = 0.0;
  for (double w : gl.weights()) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
  auto f1 = [](double x) { return std::exp(-x) * std::sin(3.0 * x); };
  CHECK(std::fabs(integrate(f1, 0.0, 5.0, 1e-12).value - gl.apply(f1, 0.0, 5.0, 4)) < 1e-10);
  auto f2 = [](double s) { return std::log(s - 1.0) / s * std::log(4.0 / (s + 1.0)); };
  CHECK(std::fabs(integrate(f2, 2.0, 3.0, 1e-12).value - gl.apply(f2, 2.0, 3.0, 2)) < 1e-10);
}

TEST_CASE("smaller rules are exact on low-degree polynomials") {
  const GaussLegendreRule rule(5);
  auto p = [](double x) { return 3 * x * x * x * x * x * x - x * x + 1; };  // degree 6 < 10
  CHECK(rule.apply(p, -1.0, 2.0) == doctest::Approx(387.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("non-convergence raises an accuracy error") {
  QuadratureOptions opts;
  opts.tolerance = 1e-14;
  opts.max_subdivisions = 10;
  try {
    integrate([](double x) { return std::sin(1.0 / x); }, 1e-3, 1.0, opts);
    FAIL("expected an accuracy error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Accuracy);
  }
}
