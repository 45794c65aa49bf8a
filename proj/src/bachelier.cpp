#include "slepian/bachelier.hpp"

#include <algorithm>
#include <cmath>

#include "slepian/errors.hpp"
#include "slepian/special.hpp"

namespace slepian::bachelier {

using special::exp_mul_cdf;
using special::std_normal_cdf;
using special::std_normal_pdf;

namespace {

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double bl_finite(double a, double b, double T) {
  if (!(T > 0.0)) throw DomainError("bl_finite: horizon must be positive");
  if (a <= 0.0) return 0.0;
  double sq = std::sqrt(T);
  double term1 = std_normal_cdf(b * sq + a / sq);
  double term2 = exp_mul_cdf(-2.0 * a * b, b * sq - a / sq);
  return clamp_unit(term1 - term2);
}

double bl_infinite(double a, double b) {
  if (!(b > 0.0)) throw DomainError("bl_infinite: drift must be positive");
  if (a <= 0.0) return 0.0;
  return clamp_unit(-std::expm1(-2.0 * a * b));
}

double bridge_noncross(double a, double b, double sbar, double y) {
  if (!(sbar > 0.0)) throw DomainError("bridge_noncross: sbar must be positive");
  if (y > a * sbar + b)
    throw DomainError("bridge_noncross: endpoint lies above the boundary");
  if (b <= 0.0) return 0.0;
  return clamp_unit(-std::expm1(-2.0 * b * (a * sbar + b - y) / sbar));
}

double segment_noncross(double c, double d, double sbar, double T, double y) {
  if (!(sbar >= 0.0 && T > sbar))
    throw DomainError("segment_noncross: need T > sbar >= 0");
  return bl_finite(d + c * sbar - y, c, T - sbar);
}

double twopiece_noncross(const TwoPieceBoundary& boundary,
                         const quadrature::QuadratureSpec& spec) {
  double a = boundary.slope1;
  double b = boundary.intercept1;
  double c = boundary.slope2;
  double d = boundary.intercept2;
  double sbar = boundary.breakpoint;
  double T = boundary.horizon;
  if (!(sbar > 0.0 && sbar <= T))
    throw DomainError("twopiece_noncross: need 0 < breakpoint <= horizon");
  double join1 = a * sbar + b;
  double join2 = c * sbar + d;
  if (join1 > join2 + 1e-12 * std::max(1.0, std::abs(join2)))
    throw DomainError(
        "twopiece_noncross: first piece must end at or below the second");
  if (b <= 0.0) return 0.0;
  if (sbar == T) return bl_finite(b, a, sbar);

  double sq = std::sqrt(sbar);
  auto integrand = [&](double y) {
    y = std::min(y, join1);
    return bridge_noncross(a, b, sbar, y) * segment_noncross(c, d, sbar, T, y) *
           std_normal_pdf(y / sq) / sq;
  };
  quadrature::QuadResult r =
      quadrature::integrate_lower_tail(integrand, join1, spec, sq);
  return clamp_unit(r.value);
}

}  // namespace slepian::bachelier
