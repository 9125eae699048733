#include "ppcurve/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "ppcurve/errors.hpp"

namespace ppcurve {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

// Boost's own adaptive driver (1.74) compares the error of the rule on
// [-1, 1] against tolerances already scaled to [a, b], so on very narrow
// intervals it always recurses to max depth. The recursion is done here with
// the error rescaled to [a, b].
double refine(const RealFunction& f, double a, double b, double tol, unsigned depth) {
  double error = 0.0;
  const double value = Rule::integrate(f, a, b, 0, 0.0, &error);
  error *= 0.5 * (b - a);
  if (depth == 0 || error <= tol) return value;
  const double mid = 0.5 * (a + b);
  return refine(f, a, mid, 0.5 * tol, depth - 1) + refine(f, mid, b, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const RealFunction& f, double a, double b, double rel_tol,
                 double abs_tol, unsigned max_depth) {
  if (a == b) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double value = Rule::integrate(f, a, b, 0, 0.0, &error, &l1);
  error *= 0.5 * (b - a);
  const double tol = std::max(abs_tol, rel_tol * l1);
  if (max_depth == 0 || error <= tol) return value;
  const double mid = 0.5 * (a + b);
  return refine(f, a, mid, 0.5 * tol, max_depth - 1) +
         refine(f, mid, b, 0.5 * tol, max_depth - 1);
}

double bisect_root(const RealFunction& f, double lo, double hi, double tol) {
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) throw DomainError("bisect_root: root is not bracketed");
  const auto narrow = [tol](double a, double b) { return b - a <= tol; };
  const auto bracket = boost::math::tools::bisect(f, lo, hi, narrow);
  return 0.5 * (bracket.first + bracket.second);
}

}  // namespace ppcurve
