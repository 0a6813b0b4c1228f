#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "nearsq/arith.hpp"
#include "nearsq/error.hpp"
#include "nearsq/quadrature.hpp"
#include "nearsq/sieve_functions.hpp"

using namespace nearsq;

namespace {

// 20-digit reference values.
constexpr double kExpGamma = 1.78107241799019798524;
constexpr double kF4Lower = 0.978354022705927756835;  // (e^g / 2) log 3
constexpr double kF3Lower = 0.823030216601993431530;  // 2 e^g log 2 / 3

double midpoint(double a, double b, long n) {
  const double h = (b - a) / n;
  long double s = 0.0L;
  for (long i = 0; i < n; ++i) {
    const double t = a + (i + 0.5) * h;
    s += std::log(t - 1.0) / t;
  }
  return static_cast<double>(s * h);
}

// Independent continuation: plain trapezoid march of (uF)' = f(u-1),
// (uf)' = F(u-1) with step h, linear interpolation of the delayed values.
struct TrapezoidOracle {
  double h;
  std::vector<double> F, f;  // index 0 is u = 1

  explicit TrapezoidOracle(double u_max, double step) : h(step) {
    const long per = std::lround(1.0 / h);
    const long n = std::lround((u_max - 1.0) * per);
    F.resize(n + 1);
    f.resize(n + 1);
    const double eg = std::exp(0.57721566490153286061);
    for (long i = 0; i <= per; ++i) {
      F[i] = 2.0 * eg / (1.0 + i * h);
      f[i] = 0.0;
    }
    for (long i = per + 1; i <= n; ++i) {
      const double u = 1.0 + i * h;
      const double uF = (u - h) * F[i - 1] + 0.5 * h * (f[i - per - 1] + f[i - per]);
      const double uf = (u - h) * f[i - 1] + 0.5 * h * (F[i - per - 1] + F[i - per]);
      F[i] = uF / u;
      f[i] = uf / u;
    }
  }
  double at(const std::vector<double>& v, double u) const { return v[std::lround((u - 1.0) / h)]; }
};

}  // namespace

TEST_CASE("closed-form F") {
  CHECK(F_closed(2.0) == doctest::Approx(kExpGamma).epsilon(1e-15));
  CHECK(F_closed(3.0) == doctest::Approx(2.0 * kExpGamma / 3.0).epsilon(1e-15));
  const double F4 = kExpGamma / 2.0 * (1.0 + midpoint(2.0, 3.0, 1'000'000));
  CHECK(std::fabs(F_closed(4.0) - F4) < 1e-9);
  CHECK_THROWS_AS(F_closed(0.0), Error);
  CHECK_THROWS_AS(F_closed(5.0001), Error);
}

TEST_CASE("closed-form f") {
  CHECK(f_closed(2.0) == 0.0);
  CHECK(f_closed(1.0) == 0.0);
  CHECK(f_closed(3.0) == doctest::Approx(kF3Lower).epsilon(1e-14));
  CHECK(f_closed(4.0) == doctest::Approx(kF4Lower).epsilon(1e-14));
  CHECK_THROWS_AS(f_closed(6.5), Error);
}

TEST_CASE("branch agreement at 3 and 4") {
  const double tol = 1e-12;
  CHECK(std::fabs(branches::F_elementary(3.0) - branches::F_integral(3.0, tol)) <= 10 * tol);
  CHECK(std::fabs(branches::f_logarithmic(4.0) - branches::f_integral(4.0, tol)) <= 10 * tol);
  CHECK(std::fabs(branches::f_logarithmic(2.0)) <= 10 * tol);
}

TEST_CASE("continuation table") {
  const auto t = SieveFunctionTable::build(12.0, 1e-3, 1e-9);
  CHECK(t.error_estimate() <= 1e-9);
  CHECK(t.F(2.5) == doctest::Approx(1.42485793439215838819).epsilon(1e-14));
  CHECK(std::fabs(t.F(5.0) - F_closed(5.0)) < 1e-10);
  CHECK(std::fabs(t.f(6.0) - f_closed(6.0)) < 1e-9);
  CHECK(std::fabs(t.F(10.0) - 1.0) < 1e-3);
  CHECK(std::fabs(t.f(10.0) - 1.0) < 1e-3);
  // off-grid queries inside the closed-form region
  for (double u : {2.0005, 3.3333, 4.4444, 4.9999})
    CHECK(std::fabs(t.F(u) - F_closed(u)) < 1e-10);
  for (double u : {2.0005, 3.3333, 4.4444, 5.5555, 5.9999})
    CHECK(std::fabs(t.f(u) - f_closed(u)) < 1e-10);
  CHECK_THROWS_AS(t.F(12.5), Error);
  CHECK_THROWS_AS(t.f(0.0), Error);
}

TEST_CASE("continuation agrees with an independent trapezoid march") {
  const auto t = SieveFunctionTable::build(9.0, 1e-3, 1e-9);
  const TrapezoidOracle oracle(9.0, 1e-4);
  for (double u : {6.5, 7.0, 8.0, 9.0}) {
    CHECK(std::fabs(t.F(u) - oracle.at(oracle.F, u)) < 1e-6);
    CHECK(std::fabs(t.f(u) - oracle.at(oracle.f, u)) < 1e-6);
  }
}

TEST_CASE("grid invariants") {
  const auto t = SieveFunctionTable::build(12.0, 1e-3, 1e-9);
  REQUIRE(t.sample_count() > 2);
  CHECK(t.sample_u(0) == 2.0);
  for (std::size_t i = 0; i + 1 < t.sample_count(); ++i) {
    REQUIRE(t.sample_F(i) > t.sample_F(i + 1));
    REQUIRE(t.sample_f(i) <= t.sample_f(i + 1));
  }
  for (std::size_t i = 0; i < t.sample_count(); ++i) {
    REQUIRE(t.sample_F(i) - t.sample_f(i) > 0.0);
    if (t.sample_u(i) >= 6.0) {
      REQUIRE(std::fabs(t.sample_F(i) - 1.0) < 0.05);
      REQUIRE(std::fabs(t.sample_f(i) - 1.0) < 0.05);
    }
  }
}

TEST_CASE("distance from 1 shrinks with the horizon") {
  const auto t8 = SieveFunctionTable::build(8.0);
  const auto t12 = SieveFunctionTable::build(12.0);
  const double e8 = std::max(std::fabs(t8.F(8.0) - 1.0), std::fabs(t8.f(8.0) - 1.0));
  const double e12 = std::max(std::fabs(t12.F(12.0) - 1.0), std::fabs(t12.f(12.0) - 1.0));
  CHECK(e12 < e8);
}

TEST_CASE("table construction preconditions") {
  CHECK_THROWS_AS(SieveFunctionTable::build(5.0), Error);
  CHECK_THROWS_AS(SieveFunctionTable::build(8.0, 0.02), Error);
  CHECK_THROWS_AS(SieveFunctionTable::build(8.0, 0.003), Error);
  try {
    SieveFunctionTable::build(8.0, 0.01, 1e-16);
    FAIL("expected an accuracy error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Accuracy);
  }
}

TEST_CASE("table dump") {
  const auto t = SieveFunctionTable::build(6.0, 0.01);
  std::ostringstream out;
  t.write_csv(out);
  const std::string s = out.str();
  CHECK(s.rfind("u,F,f\n", 0) == 0);
  CHECK(s.find('\r') == std::string::npos);
  CHECK(std::count(s.begin(), s.end(), '\n') == static_cast<long>(t.sample_count() + 1));
}

TEST_CASE("Mertens product") {
  const PrimeTable table(200'000);
  CHECK(mertens_V(2.0, table).value == 1.0);
  CHECK(mertens_V(3.0, table).value == doctest::Approx(0.5));
  CHECK(mertens_V(10.0, table).value == doctest::Approx(8.0 / 35.0).epsilon(1e-14));
  double previous = 1.0;
  for (double z : {1e3, 1e4, 1e5}) {
    const auto v = mertens_V(z, table);
    const double dev = std::fabs(v.value / v.asymptotic - 1.0);
    CHECK(dev < 0.2);
    CHECK(dev < previous);
    previous = dev;
  }
  try {
    mertens_V(1e6, table);
    FAIL("expected a coverage error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Coverage);
  }
}
