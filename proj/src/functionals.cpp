#include "ppcurve/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppcurve/errors.hpp"
#include "ppcurve/quadrature.hpp"
#include "ppcurve/text.hpp"

namespace ppcurve {

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw DomainError("grid function needs at least 2 points");
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("grid function values must be finite");
  }
}

GridFunction GridFunction::sample(const std::function<double(double)>& g,
                                  std::size_t cells) {
  std::vector<double> values(cells);
  for (std::size_t j = 0; j < cells; ++j) {
    values[j] = g((static_cast<double>(j) + 0.5) / static_cast<double>(cells));
  }
  return GridFunction(std::move(values));
}

double GridFunction::l1_norm() const {
  double sum = 0.0;
  for (double v : values_) sum += std::abs(v);
  return sum / static_cast<double>(values_.size());
}

double l1_step_vs_curve(const StepFunction& step, const PPCurve& curve, double tol) {
  return l1_step_vs_curve(step, [&curve](double u) { return curve(u); }, tol);
}

double l1_step_vs_curve(const StepFunction& step,
                        const std::function<double(double)>& monotone_curve,
                        double tol) {
  if (!(tol > 0.0)) throw DomainError("l1_step_vs_curve needs tol > 0");
  constexpr double kCrossingTolerance = 1e-12;
  // Each piece is accurate to tol times its width (absolutely) or relatively;
  // integrands are bounded by 1, so either keeps the total error below tol.
  const auto values = step.values();
  double total = 0.0;
  for (std::size_t k = 0; k < step.cells(); ++k) {
    const double lo = step.cell_lower(k);
    const double hi = step.cell_upper(k);
    const double c = values[k];
    const RealFunction above = [&](double u) { return monotone_curve(u) - c; };
    const RealFunction below = [&](double u) { return c - monotone_curve(u); };
    const double r_lo = monotone_curve(lo);
    const double r_hi = monotone_curve(hi);
    if (r_lo >= c) {
      total += integrate(above, lo, hi, tol, tol * (hi - lo));
    } else if (r_hi <= c) {
      total += integrate(below, lo, hi, tol, tol * (hi - lo));
    } else {
      const double cross = bisect_root(above, lo, hi, kCrossingTolerance);
      total += integrate(below, lo, cross, tol, tol * (cross - lo)) +
               integrate(above, cross, hi, tol, tol * (hi - cross));
    }
  }
  return total;
}

double l1_step_vs_step(const StepFunction& a, const StepFunction& b) {
  const auto ab = a.breakpoints();
  const auto bb = b.breakpoints();
  const auto av = a.values();
  const auto bv = b.values();
  std::size_t i = 0;
  std::size_t j = 0;
  double left = 0.0;
  double total = 0.0;
  while (i < ab.size() && j < bb.size()) {
    const double right = std::min(ab[i], bb[j]);
    total += std::abs(av[i] - bv[j]) * (right - left);
    left = right;
    if (ab[i] == right) ++i;
    if (bb[j] == right) ++j;
  }
  return total;
}

double sup_step_vs_curve(const StepFunction& step,
                         const std::function<double(double)>& monotone_curve) {
  const auto values = step.values();
  double sup = 0.0;
  for (std::size_t k = 0; k < step.cells(); ++k) {
    // On (lo, hi] the monotone curve ranges between its right limit at lo
    // and its value at hi.
    const double c = values[k];
    const double lo = std::nextafter(step.cell_lower(k), step.cell_upper(k));
    sup = std::max({sup, std::abs(c - monotone_curve(lo)),
                    std::abs(c - monotone_curve(step.cell_upper(k)))});
  }
  return sup;
}

double shift_modulus_l1(const GridFunction& g, double h) {
  const double cells = h * static_cast<double>(g.size());
  const double lag = std::round(cells);
  if (!(h > 0.0 && h < 1.0) || std::abs(cells - lag) > 1e-9 * std::max(1.0, cells)) {
    throw DomainError("shift " + format_real(h) + " is not a whole number of grid cells");
  }
  const auto k = static_cast<std::size_t>(lag);
  const auto v = g.values();
  double sum = 0.0;
  for (std::size_t j = 0; j + k < v.size(); ++j) sum += std::abs(v[j + k] - v[j]);
  return sum * g.spacing();
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_distance needs nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

}  // namespace ppcurve
