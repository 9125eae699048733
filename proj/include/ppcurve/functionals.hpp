#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ppcurve/empirical.hpp"
#include "ppcurve/margins.hpp"

namespace ppcurve {

// Values on the midpoint grid u_j = (j - 1/2) / J, j = 1..J.
class GridFunction {
 public:
  explicit GridFunction(std::vector<double> values);

  static GridFunction sample(const std::function<double(double)>& g, std::size_t cells);

  std::size_t size() const { return values_.size(); }
  double spacing() const { return 1.0 / static_cast<double>(values_.size()); }
  double point(std::size_t j) const {
    return (static_cast<double>(j) + 0.5) / static_cast<double>(values_.size());
  }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }

  // Midpoint Riemann approximation of the L1 norm.
  double l1_norm() const;

 private:
  std::vector<double> values_;
};

inline constexpr double kDefaultCurveTolerance = 1e-9;

// Exact-to-tolerance integral of |step - curve| over [0,1]. Within each cell
// the monotone curve crosses the cell value at most once; the crossing is
// found by bisection to 1e-12 and each signed piece is integrated by adaptive
// Gauss-Kronrod to relative tolerance tol.
double l1_step_vs_curve(const StepFunction& step, const PPCurve& curve,
                        double tol = kDefaultCurveTolerance);
double l1_step_vs_curve(const StepFunction& step,
                        const std::function<double(double)>& monotone_curve,
                        double tol = kDefaultCurveTolerance);

// Exact integral of |a - b| over the merged breakpoint partition.
double l1_step_vs_step(const StepFunction& a, const StepFunction& b);

// sup_u |step(u) - curve(u)| for a monotone continuous curve, evaluated at the
// cell edges so both one-sided limits at each jump are covered.
double sup_step_vs_curve(const StepFunction& step,
                         const std::function<double(double)>& monotone_curve);

// Riemann sum of |g(u + h) - g(u)| over u in [0, 1 - h]; h must be a whole
// number of grid cells.
double shift_modulus_l1(const GridFunction& g, double h);

// Two-sample Kolmogorov-Smirnov distance between empirical cdfs.
double ks_distance(std::span<const double> a, std::span<const double> b);

}  // namespace ppcurve
