#pragma once

#include "slepian/quadrature.hpp"

namespace slepian::moments {

// Density coefficients at warped offset sbar: the density of the running
// maximum is (lambda + mu m^2) Phi(sqrt(sbar) m) phi(m)
//            + gamma m phi(sqrt(sbar) m) phi(m).
struct MomentConstants {
  double lambda;
  double mu;
  double gamma;
  double sbar;
};

MomentConstants moment_constants(double sbar);

// Closed-form mean of the running maximum at offset s in [0, 1].
double mean(double s);

// Closed-form second moment (1 + 3 sbar) / (1 + sbar).
double second_moment(double s);

// The uncorrected variant (2 + 3 sbar) / (1 + sbar), kept as a diagnostic:
// it disagrees with both quadrature and simulation by a full unit of
// normalization mass and is exposed so reports can demonstrate that.
double second_moment_uncorrected(double s);

double variance(double s);

// Moment generating function E[exp(theta * max)] for |theta| <= 20,
// 0 < s <= 1, computed by quadrature against the closed-form density with
// the integration window centered on theta.
double mgf(double theta, double s, const quadrature::QuadratureSpec& spec = {});

// k-th raw moment by quadrature against the density; k >= 1, 0 < s <= 1.
double moment_k(int k, double s, const quadrature::QuadratureSpec& spec = {});

}  // namespace slepian::moments
