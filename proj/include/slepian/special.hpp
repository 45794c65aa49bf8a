#pragma once

namespace slepian::special {

inline constexpr double inv_sqrt_2pi = 0.398942280401432677939946059934;
inline constexpr double sqrt_2pi = 2.506628274631000502415765284811;

// Standard normal density. Relative error at most a few ulp across the
// non-underflowing range; the exponent is formed in long double so the
// x*x/2 argument error does not leak into the result.
double std_normal_pdf(double x);

// Standard normal CDF via the complementary error function. Absolute error
// below 1e-15 everywhere; relative error below 1e-13 down to x = -37.
// Accepts +-infinity and returns the exact limit.
double std_normal_cdf(double x);

// Scaled complementary error function exp(t^2) erfc(t) for t >= 0.
double erfcx(double t);

// exp(z) * std_normal_cdf(w) without intermediate overflow or underflow.
// The dangerous corner z > 0, w < 0 is routed through erfcx so the two
// exponentials cancel analytically. Throws OverflowError when the true
// product exceeds the double range.
double exp_mul_cdf(double z, double w);

}  // namespace slepian::special
