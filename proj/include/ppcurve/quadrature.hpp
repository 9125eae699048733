#pragma once

#include <functional>

namespace ppcurve {

using RealFunction = std::function<double(double)>;

// Adaptive 15-point Gauss-Kronrod (Boost.Math). Stops once the error
// estimate is below rel_tol times the L1 norm of f on [a, b], or below abs_tol.
// Without abs_tol an integrand that vanishes identically recurses to max_depth.
double integrate(const RealFunction& f, double a, double b, double rel_tol,
                 double abs_tol = 0.0, unsigned max_depth = 15);

// Root of a monotone function on [lo, hi] with f(lo) and f(hi) of opposite
// sign (or zero), by bisection until the bracket is narrower than tol.
double bisect_root(const RealFunction& f, double lo, double hi, double tol);

}  // namespace ppcurve
