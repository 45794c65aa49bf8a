#include <doctest.h>

#include <cmath>

#include "slepian/errors.hpp"
#include "slepian/quadrature.hpp"
#include "slepian/special.hpp"

using namespace slepian;
using quadrature::integrate_1d;
using quadrature::integrate_2d_nested;
using quadrature::integrate_lower_tail;
using quadrature::QuadratureSpec;
using quadrature::QuadResult;
using special::std_normal_pdf;

TEST_CASE("polynomials are integrated to machine precision") {
  QuadResult r1 = integrate_1d([](double) { return 1.0; }, 0.0, 3.0);
  CHECK(r1.value == doctest::Approx(3.0).epsilon(1e-15));

  QuadResult r2 = integrate_1d([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(std::abs(r2.value - 1.0 / 3.0) < 1e-15);

  // Gauss-Kronrod 7-15 is exact far beyond degree 10.
  QuadResult r3 = integrate_1d(
      [](double x) { return 11.0 * std::pow(x, 10.0) - 4.0 * std::pow(x, 3.0); },
      -1.0, 2.0);
  double exact = std::pow(2.0, 11.0) + 1.0 - (16.0 - 1.0);
  CHECK(std::abs(r3.value - exact) < 1e-14 * std::abs(exact));
}

TEST_CASE("gaussian integrals") {
  QuadResult r = integrate_1d(std_normal_pdf, -8.0, 8.0);
  CHECK(std::abs(r.value - 0.9999999999999987) < 1e-13);
  CHECK(r.error_estimate < 1e-9);
  CHECK(r.evaluations >= 15);

  QuadResult tail = integrate_lower_tail(std_normal_pdf, 0.0);
  CHECK(std::abs(tail.value - 0.5) < 1e-12);

  QuadResult whole = integrate_lower_tail(std_normal_pdf, 12.0);
  CHECK(std::abs(whole.value - 1.0) < 1e-12);

  QuadResult first = integrate_lower_tail([](double x) { return x * std_normal_pdf(x); }, 0.0);
  CHECK(std::abs(first.value + std_normal_pdf(0.0)) < 1e-12);

  // A wide effective sigma stretches the truncation window.
  QuadResult wide = integrate_lower_tail(
      [](double x) { return std_normal_pdf(x / 3.0) / 3.0; }, 0.0, {}, 3.0);
  CHECK(std::abs(wide.value - 0.5) < 1e-12);

  // A narrow mass far below the upper limit must not slip between the
  // nodes of the first panel.
  const double sigma = 7e-4;
  QuadResult narrow = integrate_lower_tail(
      [=](double x) { return std_normal_pdf(x / sigma) / sigma; }, 0.25, {}, sigma);
  CHECK(std::abs(narrow.value - 1.0) < 1e-9);
  QuadResult narrow_half = integrate_lower_tail(
      [=](double x) { return std_normal_pdf(x / sigma) / sigma; }, 0.0, {}, sigma);
  CHECK(std::abs(narrow_half.value - 0.5) < 1e-9);
}

TEST_CASE("discontinuous integrand converges under global refinement") {
  auto box = [](double x) { return (x >= -0.75 && x <= -0.25) ? 1.0 : 0.0; };
  QuadResult r = integrate_1d(box, -2.0, 2.0);
  CHECK(std::abs(r.value - 0.5) < 1e-9);
}

TEST_CASE("tightening the tolerance never loosens the estimate") {
  auto f = [](double x) { return std_normal_pdf(x) * std::cos(3.0 * x); };
  double prev_err = std::numeric_limits<double>::infinity();
  double prev_val = 0.0;
  bool first = true;
  for (double tol : {1e-6, 1e-8, 1e-10, 1e-12}) {
    QuadratureSpec spec;
    spec.abs_tol = tol;
    spec.rel_tol = 0.0;
    QuadResult r = integrate_1d(f, -9.0, 9.0, spec);
    CHECK(r.error_estimate <= prev_err);
    if (!first) CHECK(std::abs(r.value - prev_val) < 1e-10);
    prev_err = r.error_estimate;
    prev_val = r.value;
    first = false;
  }
}

TEST_CASE("depth exhaustion names the failing subinterval") {
  auto singular = [](double x) { return std::pow(std::abs(x - 0.3), -0.9); };
  QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  spec.rel_tol = 1e-12;
  try {
    integrate_1d(singular, 0.0, 1.0, spec);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.lo <= 0.3);
    CHECK(e.hi >= 0.3 - 1e-6);
    CHECK(e.error_estimate > 0.0);
  }
}

TEST_CASE("domain validation") {
  auto f = [](double x) { return x; };
  CHECK_THROWS_AS(integrate_1d(f, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(integrate_1d(f, 0.0, std::numeric_limits<double>::infinity()),
                  DomainError);
  CHECK_THROWS_AS(integrate_lower_tail(f, 0.0, {}, 0.0), DomainError);
}

TEST_CASE("nested 2-d integration") {
  auto product = [](double x, double y) {
    return std_normal_pdf(x) * std_normal_pdf(y);
  };

  QuadResult quarter = integrate_2d_nested(product, 0.0, [](double) { return 0.0; });
  CHECK(std::abs(quarter.value - 0.25) < 1e-10);

  // P(Y < X) for independent standard normals.
  QuadResult half = integrate_2d_nested(product, 12.0, [](double x) { return x; });
  CHECK(std::abs(half.value - 0.5) < 1e-9);
  CHECK(half.error_estimate < 1e-7);
  CHECK(half.evaluations > quarter.evaluations);

  // Scaled inner variable exercises the inner sigma handling.
  auto scaled = [](double x, double y) {
    return std_normal_pdf(x) * std_normal_pdf(y / 0.2) / 0.2;
  };
  QuadResult s = integrate_2d_nested(scaled, 0.0, [](double) { return 0.0; }, {}, 1.0, 0.2);
  CHECK(std::abs(s.value - 0.25) < 1e-9);
}
