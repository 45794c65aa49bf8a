#pragma once

#include "slepian/quadrature.hpp"

namespace slepian::dist {

// Level m for the running maximum over the window family up to offset s.
struct MarginalQuery {
  double m;
  double s;
};

// Joint levels: running max up to offset s at m, up to offset t at M.
struct JointQuery {
  double m;
  double M;
  double s;
  double t;
};

// Offsets closer than this collapse the joint law onto the marginal at the
// later offset.
inline constexpr double degenerate_window_eps = 1e-9;

// P(max over offsets in [0, s] <= m). At s = 0 this is the standard normal
// CDF of m. Requires 0 <= s <= 1 and finite m.
double running_max_cdf(const MarginalQuery& query,
                       const quadrature::QuadratureSpec& spec = {});

// Closed form for the full window s = 1:
// Phi(M)^2 - M phi(M) Phi(M) - phi(M)^2.
double global_max_cdf(double M);

// Closed form for P(max over [0, s] <= 0); requires 0 < s <= 1.
double prob_nonpositive(double s);

// Density of the running maximum at offset s in (0, 1].
double running_max_pdf(const MarginalQuery& query);

// P(max up to s <= m, max up to t <= M) for 0 <= s <= t <= 1.
double joint_cdf(const JointQuery& query,
                 const quadrature::QuadratureSpec& spec = {});

}  // namespace slepian::dist
