#include "ppcurve/special.hpp"

#include <cmath>
#include <limits>

#include <boost/math/special_functions/erf.hpp>

#include "ppcurve/quadrature.hpp"
#include "ppcurve/random.hpp"

namespace ppcurve {

namespace {
constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_quantile(double p) {
  if (!(p >= 0.0 && p <= 1.0)) return std::numeric_limits<double>::quiet_NaN();
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return -kSqrt2 * boost::math::erfc_inv(2.0 * p);
}

double bivariate_normal_cdf(double x, double y, double rho) {
  constexpr double lower = -10.0;
  if (std::isnan(x) || std::isnan(y)) return std::numeric_limits<double>::quiet_NaN();
  if (x == -std::numeric_limits<double>::infinity() ||
      y == -std::numeric_limits<double>::infinity()) {
    return 0.0;
  }
  if (x == std::numeric_limits<double>::infinity()) return normal_cdf(y);
  if (y == std::numeric_limits<double>::infinity()) return normal_cdf(x);
  // Below -10 the mass of the first coordinate is < 1e-23.
  if (x <= lower) return 0.0;

  const double s = std::sqrt(1.0 - rho * rho);
  const RealFunction integrand = [=](double t) {
    return normal_pdf(t) * normal_cdf((y - rho * t) / s);
  };
  const double value = integrate(integrand, lower, x, 1e-12);
  if (value < 0.0) return 0.0;
  if (value > 1.0) return 1.0;
  return value;
}

double RngStream::normal() { return normal_quantile(uniform()); }

}  // namespace ppcurve
