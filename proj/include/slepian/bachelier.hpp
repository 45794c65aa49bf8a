#pragma once

#include "slepian/quadrature.hpp"

namespace slepian::bachelier {

// Boundary a + b*u.
struct LinearBoundary {
  double intercept;
  double slope;
};

// Piecewise-linear boundary for a unit-variance Brownian motion on
// [0, horizon]: slope1*u + intercept1 on [0, breakpoint], then
// slope2*u + intercept2 on [breakpoint, horizon].
struct TwoPieceBoundary {
  double slope1;
  double intercept1;
  double slope2;
  double intercept2;
  double breakpoint;
  double horizon;
};

// P(W(u) <= a + b*u for all u in [0, T]) for standard Brownian motion W.
// Zero when a <= 0; throws DomainError when T <= 0.
double bl_finite(double a, double b, double T);

// Infinite-horizon limit 1 - exp(-2ab); requires b > 0.
double bl_infinite(double a, double b);

// P(bridge stays below a*u + b on [0, sbar]) for a Brownian bridge from 0
// to y over [0, sbar]. Requires sbar > 0 and y <= a*sbar + b; zero when
// b <= 0.
double bridge_noncross(double a, double b, double sbar, double y);

// P(W stays below c*u + d on [sbar, T] | W(sbar) = y), expressed through
// bl_finite after shifting the time origin. Requires T > sbar >= 0.
double segment_noncross(double c, double d, double sbar, double T, double y);

// Non-crossing probability for the full two-piece boundary, obtained by
// conditioning on the value at the breakpoint and integrating the bridge
// and segment factors against the Gaussian density of that value.
// Requires 0 < breakpoint <= horizon and that the first piece ends no
// higher than the second piece starts.
double twopiece_noncross(const TwoPieceBoundary& boundary,
                         const quadrature::QuadratureSpec& spec = {});

}  // namespace slepian::bachelier
