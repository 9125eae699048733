#pragma once

namespace ppcurve {

inline constexpr double kPi = 3.14159265358979323846;

double normal_pdf(double x);
double normal_cdf(double x);

// Inverse of normal_cdf on (0,1); -inf / +inf at 0 / 1.
double normal_quantile(double p);

// P(Z1 <= x, Z2 <= y) for standard normals with correlation rho, |rho| < 1.
double bivariate_normal_cdf(double x, double y, double rho);

}  // namespace ppcurve
