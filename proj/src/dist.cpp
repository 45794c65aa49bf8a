#include "slepian/dist.hpp"

#include <algorithm>
#include <cmath>

#include "slepian/bachelier.hpp"
#include "slepian/errors.hpp"
#include "slepian/special.hpp"
#include "slepian/timewarp.hpp"

namespace slepian::dist {

using special::std_normal_cdf;
using special::std_normal_pdf;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

// Core integral shared by the marginal CDF and the s = 0 joint law:
//
//   I(outer_hi, level, tbar) =
//       int_{-inf}^{outer_hi} phi(x) Phi(alpha*level + beta*x) dx
//     - phi(level) int_{-inf}^{outer_hi} Phi(beta*level + alpha*x) dx
//
// with alpha = (1 + tbar) / (2 sqrt(tbar)), beta = (tbar - 1) / (2 sqrt(tbar)).
// The marginal CDF at warped offset tbar is I(m, m, tbar); the joint law
// with the first offset at zero is I(min(m, M), M, tbar).
quadrature::QuadResult max_cdf_integral(double outer_hi, double level, double tbar,
                                        const quadrature::QuadratureSpec& spec) {
  double sq = std::sqrt(tbar);
  double alpha = (1.0 + tbar) / (2.0 * sq);
  double beta = (tbar - 1.0) / (2.0 * sq);

  quadrature::QuadResult term1 = quadrature::integrate_lower_tail(
      [&](double x) { return std_normal_pdf(x) * std_normal_cdf(alpha * level + beta * x); },
      outer_hi, spec);

  // The second integrand has no Gaussian factor; it dies only through the
  // Phi argument, so truncate where that argument reaches -trunc_radius.
  double phi_level = std_normal_pdf(level);
  double lo2 = (-spec.trunc_radius - beta * level) / alpha;
  quadrature::QuadResult term2{0.0, 0.0, 0};
  if (lo2 < outer_hi) {
    term2 = quadrature::integrate_1d(
        [&](double x) { return std_normal_cdf(beta * level + alpha * x); }, lo2,
        outer_hi, spec);
  }

  quadrature::QuadResult out;
  out.value = term1.value - phi_level * term2.value;
  out.error_estimate = term1.error_estimate + phi_level * term2.error_estimate;
  out.evaluations = term1.evaluations + term2.evaluations;
  return out;
}

}  // namespace

double running_max_cdf(const MarginalQuery& query,
                       const quadrature::QuadratureSpec& spec) {
  if (!(query.s >= 0.0 && query.s <= 1.0))
    throw DomainError("running_max_cdf: s must lie in [0,1]");
  if (!std::isfinite(query.m))
    throw DomainError("running_max_cdf: level must be finite");
  if (query.s == 0.0) return std_normal_cdf(query.m);
  double tbar = timewarp::warp(query.s);
  return clamp_unit(max_cdf_integral(query.m, query.m, tbar, spec).value);
}

double global_max_cdf(double M) {
  if (!std::isfinite(M)) throw DomainError("global_max_cdf: level must be finite");
  double c = std_normal_cdf(M);
  double p = std_normal_pdf(M);
  return clamp_unit(c * c - M * p * c - p * p);
}

double prob_nonpositive(double s) {
  if (!(s > 0.0 && s <= 1.0))
    throw DomainError("prob_nonpositive: s must lie in (0,1]");
  double sbar = timewarp::warp(s);
  double sq = std::sqrt(sbar);
  double angle = std::atan2(2.0 * sq, sbar - 1.0);
  if (angle <= 0.0) angle += 2.0 * kPi;
  return angle / (2.0 * kPi) - sq / ((sbar + 1.0) * kPi);
}

double running_max_pdf(const MarginalQuery& query) {
  if (!(query.s > 0.0 && query.s <= 1.0))
    throw DomainError("running_max_pdf: s must lie in (0,1]");
  if (!std::isfinite(query.m))
    throw DomainError("running_max_pdf: level must be finite");
  double m = query.m;
  double sbar = timewarp::warp(query.s);
  double sq = std::sqrt(sbar);
  double lambda = 2.0 / (1.0 + sbar);
  double mu = 2.0 * sbar / (1.0 + sbar);
  double gamma = 2.0 * sq / (1.0 + sbar);
  double cdf_part = std_normal_cdf(sq * m) * std_normal_pdf(m);
  double pdf_part = std_normal_pdf(sq * m) * std_normal_pdf(m);
  return (lambda + mu * m * m) * cdf_part + gamma * m * pdf_part;
}

double joint_cdf(const JointQuery& query, const quadrature::QuadratureSpec& spec) {
  if (!(query.s >= 0.0 && query.s <= query.t && query.t <= 1.0))
    throw DomainError("joint_cdf: need 0 <= s <= t <= 1");
  if (!(std::isfinite(query.m) && std::isfinite(query.M)))
    throw DomainError("joint_cdf: levels must be finite");

  double m_eff = std::min(query.m, query.M);
  double M = query.M;
  double t = query.t;

  if (query.t - query.s <= degenerate_window_eps)
    return running_max_cdf({m_eff, t}, spec);

  if (query.s == 0.0) {
    double T = timewarp::warp(t);
    return clamp_unit(max_cdf_integral(m_eff, M, T, spec).value);
  }

  timewarp::JointParams jp = timewarp::joint_params(m_eff, M, query.s, t);
  double sq = std::sqrt(jp.sbar);
  double gap = jp.T - jp.sbar;

  auto integrand = [&](double x, double y) {
    double inner_level = jp.q - jp.p * x;
    double bridge = clamp_unit(-std::expm1(-(m_eff - x) * (inner_level - y) / jp.sbar));
    double segment = bachelier::bl_finite(jp.eta - jp.p * x - y, (M + x) / 2.0, gap);
    return std_normal_pdf(x) * std_normal_pdf(y / sq) / sq * bridge * segment;
  };
  auto inner_hi = [&](double x) { return jp.q - jp.p * x; };

  quadrature::QuadResult r = quadrature::integrate_2d_nested(
      integrand, m_eff, inner_hi, spec, 1.0, sq);
  return clamp_unit(r.value);
}

}  // namespace slepian::dist
