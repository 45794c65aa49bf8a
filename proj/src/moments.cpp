#include "slepian/moments.hpp"

#include <cmath>

#include "slepian/dist.hpp"
#include "slepian/errors.hpp"
#include "slepian/special.hpp"
#include "slepian/timewarp.hpp"

namespace slepian::moments {

using special::std_normal_cdf;
using special::std_normal_pdf;
using special::sqrt_2pi;

MomentConstants moment_constants(double sbar) {
  if (!(sbar >= 0.0 && sbar <= 1.0))
    throw DomainError("moment_constants: sbar must lie in [0,1]");
  MomentConstants c;
  c.lambda = 2.0 / (1.0 + sbar);
  c.mu = 2.0 * sbar / (1.0 + sbar);
  c.gamma = 2.0 * std::sqrt(sbar) / (1.0 + sbar);
  c.sbar = sbar;
  return c;
}

double mean(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("mean: s must lie in [0,1]");
  double sbar = timewarp::warp(s);
  return 4.0 * std::sqrt(sbar) / (sqrt_2pi * std::sqrt(1.0 + sbar));
}

double second_moment(double s) {
  if (!(s >= 0.0 && s <= 1.0))
    throw DomainError("second_moment: s must lie in [0,1]");
  double sbar = timewarp::warp(s);
  return (1.0 + 3.0 * sbar) / (1.0 + sbar);
}

double second_moment_uncorrected(double s) {
  if (!(s >= 0.0 && s <= 1.0))
    throw DomainError("second_moment_uncorrected: s must lie in [0,1]");
  double sbar = timewarp::warp(s);
  return (2.0 + 3.0 * sbar) / (1.0 + sbar);
}

double variance(double s) {
  double mu1 = mean(s);
  return second_moment(s) - mu1 * mu1;
}

double mgf(double theta, double s, const quadrature::QuadratureSpec& spec) {
  if (!(std::abs(theta) <= 20.0))
    throw DomainError("mgf: |theta| must not exceed 20");
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("mgf: s must lie in (0,1]");
  double sbar = timewarp::warp(s);
  double sq = std::sqrt(sbar);
  MomentConstants c = moment_constants(sbar);

  // exp(theta m) phi(m) = exp(theta^2/2) phi(m - theta), so the whole
  // density integrates against the theta-shifted Gaussian with one common
  // scale factor pulled out front. The integrand decays like phi(m - theta)
  // times bounded factors, so [theta - R, theta + R] captures it to far
  // below the quadrature tolerance.
  double lo = theta - spec.trunc_radius;
  double hi = theta + spec.trunc_radius;
  auto g = [&](double m) {
    double shifted = std_normal_pdf(m - theta);
    return ((c.lambda + c.mu * m * m) * std_normal_cdf(sq * m) +
            c.gamma * m * std_normal_pdf(sq * m)) *
           shifted;
  };
  quadrature::QuadResult r = quadrature::integrate_1d(g, lo, hi, spec);
  long double scale = expl(0.5L * static_cast<long double>(theta) *
                           static_cast<long double>(theta));
  return static_cast<double>(scale * static_cast<long double>(r.value));
}

double moment_k(int k, double s, const quadrature::QuadratureSpec& spec) {
  if (k < 1) throw DomainError("moment_k: order must be at least 1");
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("moment_k: s must lie in (0,1]");
  double radius = spec.trunc_radius + 2.0;
  auto integrand = [&](double m) {
    double p = dist::running_max_pdf({m, s});
    double mk = 1.0;
    for (int i = 0; i < k; ++i) mk *= m;
    return mk * p;
  };
  return quadrature::integrate_1d(integrand, -radius, radius, spec).value;
}

}  // namespace slepian::moments
