#include <doctest.h>

#include <cmath>

#include "slepian/dist.hpp"
#include "slepian/errors.hpp"
#include "slepian/moments.hpp"
#include "slepian/quadrature.hpp"
#include "slepian/special.hpp"
#include "slepian/timewarp.hpp"

using namespace slepian;
using special::std_normal_cdf;
using special::std_normal_pdf;

namespace {

struct MomentPoint {
  double s;
  double mean;
  double second;
  double second_uncorrected;
  double variance;
};

// Frozen from high-precision evaluation of the closed forms.
const MomentPoint kMomentTable[] = {
    {0.1, 0.35682482323055426, 1.1, 2.05, 0.9726760455264837},
    {0.25, 0.5641895835477563, 1.25, 2.125, 0.9316901138162094},
    {0.3, 0.6180387232371033, 1.3, 2.15, 0.9180281365794511},
    {0.5, 0.7978845608028654, 1.5, 2.25, 0.8633802276324186},
    {0.8, 1.009253008808064, 1.8, 2.4, 0.7814083642118699},
    {1.0, 1.1283791670955126, 2.0, 2.5, 0.7267604552648373}};

double quad_moment(int k, double s) { return moments::moment_k(k, s); }

}  // namespace

TEST_CASE("density constants satisfy their defining identities") {
  for (double sbar : {0.0, 0.2, 0.5, 1.0}) {
    moments::MomentConstants c = moments::moment_constants(sbar);
    CHECK(c.lambda * (1.0 + sbar) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(c.mu * (1.0 + sbar) == doctest::Approx(2.0 * sbar).epsilon(1e-15));
    CHECK(c.gamma * (1.0 + sbar) ==
          doctest::Approx(2.0 * std::sqrt(sbar)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(moments::moment_constants(-0.1), DomainError);
  CHECK_THROWS_AS(moments::moment_constants(1.1), DomainError);
}

TEST_CASE("closed-form moments against frozen values") {
  for (const MomentPoint& pt : kMomentTable) {
    CHECK(moments::mean(pt.s) == doctest::Approx(pt.mean).epsilon(1e-14));
    CHECK(moments::second_moment(pt.s) ==
          doctest::Approx(pt.second).epsilon(1e-14));
    CHECK(moments::second_moment_uncorrected(pt.s) ==
          doctest::Approx(pt.second_uncorrected).epsilon(1e-14));
    CHECK(moments::variance(pt.s) ==
          doctest::Approx(pt.variance).epsilon(1e-13));
  }
}

TEST_CASE("moment endpoints") {
  CHECK(moments::mean(0.0) == 0.0);
  CHECK(moments::mean(1.0) ==
        doctest::Approx(2.0 / std::sqrt(3.14159265358979323846)).epsilon(1e-15));
  CHECK(moments::second_moment(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(moments::second_moment(1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(moments::second_moment_uncorrected(0.0) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(moments::second_moment_uncorrected(1.0) ==
        doctest::Approx(2.5).epsilon(1e-15));
  CHECK(moments::variance(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(moments::variance(1.0) ==
        doctest::Approx(2.0 - 4.0 / 3.14159265358979323846).epsilon(1e-12));
  CHECK_THROWS_AS(moments::mean(-0.1), DomainError);
  CHECK_THROWS_AS(moments::second_moment(1.1), DomainError);
}

TEST_CASE("closed-form moments agree with density quadrature") {
  for (double s : {0.1, 0.3, 0.5, 0.8, 1.0}) {
    CHECK(std::abs(moments::mean(s) - quad_moment(1, s)) < 1e-8);
    CHECK(std::abs(moments::second_moment(s) - quad_moment(2, s)) < 1e-8);
    // The uncorrected form misses by a full unit of mass.
    CHECK(std::abs(moments::second_moment_uncorrected(s) - quad_moment(2, s)) >
          0.4);
  }
}

TEST_CASE("mean and variance are monotone in the window length") {
  double prev_mean = -1.0;
  double prev_var = 2.0;
  for (int i = 1; i <= 50; ++i) {
    double s = i / 50.0;
    double mn = moments::mean(s);
    double vr = moments::variance(s);
    CHECK(mn > prev_mean);
    CHECK(vr < prev_var);
    prev_mean = mn;
    prev_var = vr;
  }
}

TEST_CASE("mgf basics") {
  for (double s : {0.1, 0.5, 1.0})
    CHECK(std::abs(moments::mgf(0.0, s) - 1.0) < 1e-9);

  // Compare against direct integration of exp(theta m) against the density.
  double direct = quadrature::integrate_1d(
                      [](double m) {
                        return std::exp(0.5 * m) *
                               dist::running_max_pdf({m, 1.0});
                      },
                      -14.0, 14.5)
                      .value;
  CHECK(std::abs(moments::mgf(0.5, 1.0) - direct) < 1e-8);

  // Log-convexity in theta.
  double m0 = moments::mgf(0.5, 0.5);
  double m1 = moments::mgf(1.0, 0.5);
  double m2 = moments::mgf(1.5, 0.5);
  CHECK(m1 * m1 <= m0 * m2 * (1.0 + 1e-12));

  CHECK_THROWS_AS(moments::mgf(21.0, 0.5), DomainError);
  CHECK_THROWS_AS(moments::mgf(0.5, 0.0), DomainError);
}

TEST_CASE("mgf curvature recovers the second moment") {
  const double h = 1e-3;
  for (double s : {0.3, 1.0}) {
    double curvature = (moments::mgf(h, s) - 2.0 +
                        moments::mgf(-h, s)) /
                       (h * h);
    CHECK(std::abs(curvature - moments::second_moment(s)) < 1e-4);
  }
}

TEST_CASE("higher moments by quadrature") {
  // A vanishing window leaves a standard normal, whose fourth moment is 3.
  CHECK(std::abs(moments::moment_k(4, 1e-8) - 3.0) < 1e-3);
  CHECK_THROWS_AS(moments::moment_k(0, 0.5), DomainError);
  CHECK_THROWS_AS(moments::moment_k(2, 0.0), DomainError);
}

TEST_CASE("intermediate weighted-normal integrals") {
  struct CoeffPoint {
    double sbar;
    double a1;
    double a2;
    double a3;
  };
  // a1 = E[m Phi(sqrt(sbar) m)], a2 = E[m^3 Phi(...)], a3 = E[m^2 phi(sqrt(sbar) m)]
  // with expectations under the standard normal; frozen independently.
  const CoeffPoint kCoeffs[] = {
      {0.2, 0.16286750396763996, 0.46145792790831325, 0.3034856751644664},
      {0.5, 0.23032943298089031, 0.6142118212823742, 0.2171566719568533},
      {1.0, 0.28209479177387814, 0.7052369794346953, 0.14104739588693907}};
  quadrature::QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  for (const CoeffPoint& pt : kCoeffs) {
    double root = std::sqrt(pt.sbar);
    auto moment_of = [&](auto weight) {
      return quadrature::integrate_1d(
                 [&](double m) { return weight(m) * std_normal_pdf(m); },
                 -14.0, 14.0, spec)
          .value;
    };
    double a1 = moment_of([&](double m) { return m * std_normal_cdf(root * m); });
    double a2 =
        moment_of([&](double m) { return m * m * m * std_normal_cdf(root * m); });
    double a3 =
        moment_of([&](double m) { return m * m * std_normal_pdf(root * m); });
    double even2 =
        moment_of([&](double m) { return m * m * std_normal_cdf(root * m); });
    double even4 = moment_of(
        [&](double m) { return m * m * m * m * std_normal_cdf(root * m); });
    CHECK(std::abs(a1 - pt.a1) < 1e-10);
    CHECK(std::abs(a2 - pt.a2) < 1e-10);
    CHECK(std::abs(a3 - pt.a3) < 1e-10);
    CHECK(std::abs(even2 - 0.5) < 1e-10);
    CHECK(std::abs(even4 - 1.5) < 1e-10);
  }
}
