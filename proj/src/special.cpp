#include "slepian/special.hpp"

#include <cmath>
#include <limits>

#include "slepian/errors.hpp"

namespace slepian::special {

namespace {

constexpr long double kInvSqrt2piL = 0.398942280401432677939946059934381868L;
constexpr long double kInvSqrt2L = 0.707106781186547524400844362104849039L;
constexpr double kLogDblMax = 709.782712893384;
constexpr double kSqrtPi = 1.772453850905516027298167483341;

}  // namespace

double std_normal_pdf(double x) {
  long double lx = x;
  return static_cast<double>(kInvSqrt2piL * expl(-0.5L * lx * lx));
}

double std_normal_cdf(double x) {
  if (std::isnan(x)) throw DomainError("std_normal_cdf: nan argument");
  if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;
  return static_cast<double>(0.5L * erfcl(-static_cast<long double>(x) * kInvSqrt2L));
}

double erfcx(double t) {
  if (!(t >= 0.0)) throw DomainError("erfcx: argument must be nonnegative");
  if (t < 26.0) {
    long double lt = t;
    return static_cast<double>(expl(lt * lt) * erfcl(lt));
  }
  // Asymptotic series; at t >= 26 nine terms reach full double precision.
  double inv2t2 = 1.0 / (2.0 * t * t);
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k <= 9; ++k) {
    term *= -(2 * k - 1) * inv2t2;
    sum += term;
  }
  return sum / (t * kSqrtPi);
}

double exp_mul_cdf(double z, double w) {
  if (std::isnan(z) || std::isnan(w))
    throw DomainError("exp_mul_cdf: nan argument");

  if (z > 0.0 && w < 0.0) {
    long double t = -static_cast<long double>(w) * kInvSqrt2L;
    long double e = static_cast<long double>(z) - t * t;
    long double scaled = 0.5L * static_cast<long double>(erfcx(static_cast<double>(t)));
    if (e > 709.0L) {
      long double lv = e + logl(scaled);
      if (lv > static_cast<long double>(kLogDblMax))
        throw OverflowError("exp_mul_cdf: product exceeds double range");
      return static_cast<double>(expl(lv));
    }
    return static_cast<double>(scaled * expl(e));
  }

  double phi = std_normal_cdf(w);
  if (z > kLogDblMax) {
    // Here w >= 0, so phi >= 0.5; log(phi) can rescue at most ~0.69 of
    // exponent, so check the exact log of the product.
    long double lv = static_cast<long double>(z) + logl(static_cast<long double>(phi));
    if (lv > static_cast<long double>(kLogDblMax))
      throw OverflowError("exp_mul_cdf: product exceeds double range");
    return static_cast<double>(expl(lv));
  }
  return static_cast<double>(expl(static_cast<long double>(z)) *
                             static_cast<long double>(phi));
}

}  // namespace slepian::special
