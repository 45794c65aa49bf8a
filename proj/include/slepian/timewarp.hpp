#pragma once

#include <algorithm>
#include <cmath>

#include "slepian/errors.hpp"

namespace slepian::timewarp {

// Maps window offset s in [0,1] to the auxiliary time sbar = s / (2 - s).
// Strictly increasing, warp(0) = 0, warp(1) = 1.
inline double warp(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("warp: s must lie in [0,1]");
  return s / (2.0 - s);
}

// Inverse of warp on [0,1].
inline double unwarp(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("unwarp: x must lie in [0,1]");
  return 2.0 * x / (1.0 + x);
}

// Precomputed coefficients for the joint running-max law at offsets
// 0 < s <= t: inner boundary slope p, inner level q, outer level eta, and
// the time gap delta between the warped offsets.
struct JointParams {
  double p;
  double q;
  double eta;
  double delta;
  double sbar;
  double T;
};

inline JointParams joint_params(double m, double M, double s, double t) {
  if (!(s > 0.0 && s <= t && t <= 1.0))
    throw DomainError("joint_params: need 0 < s <= t <= 1");
  if (!(m <= M)) throw DomainError("joint_params: need m <= M");
  double sbar = warp(s);
  double T = warp(t);
  JointParams out;
  out.p = (1.0 - sbar) / 2.0;
  out.q = (sbar + 1.0) / 2.0 * m;
  out.eta = (sbar + 1.0) / 2.0 * M;
  out.delta = std::sqrt(std::max(T - sbar, 0.0));
  out.sbar = sbar;
  out.T = T;
  return out;
}

}  // namespace slepian::timewarp
