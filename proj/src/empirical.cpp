#include "ppcurve/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppcurve/errors.hpp"

namespace ppcurve {

SortedSample::SortedSample(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("sample must not be empty");
  for (double v : values_) {
    if (std::isnan(v)) throw DomainError("sample contains NaN");
  }
  std::sort(values_.begin(), values_.end());
}

StepFunction::StepFunction(std::vector<double> breakpoints,
                           std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.empty() || breakpoints_.size() != values_.size()) {
    throw DomainError("step function needs one value per breakpoint");
  }
  double prev = 0.0;
  for (double b : breakpoints_) {
    if (!(b > prev)) {
      throw DomainError("step breakpoints must be strictly increasing in (0,1]");
    }
    prev = b;
  }
  if (breakpoints_.back() != 1.0) {
    throw DomainError("last step breakpoint must be 1");
  }
}

StepFunction StepFunction::constant(double value) {
  return StepFunction({1.0}, {value});
}

double StepFunction::operator()(double u) const {
  if (u <= 0.0) return values_.front();
  if (u >= 1.0) return values_.back();
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), u);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

bool StepFunction::is_nondecreasing() const {
  return std::is_sorted(values_.begin(), values_.end());
}

double empirical_cdf_eval(const SortedSample& sample, double x) {
  const auto v = sample.values();
  const auto count = std::upper_bound(v.begin(), v.end(), x) - v.begin();
  return static_cast<double>(count) / static_cast<double>(v.size());
}

double empirical_qf_eval(const SortedSample& sample, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("empirical quantile needs u in (0,1), got " +
                      std::to_string(u));
  }
  const std::size_t n = sample.size();
  const double dn = static_cast<double>(n);
  auto rank = static_cast<std::size_t>(std::ceil(dn * u));
  rank = std::clamp<std::size_t>(rank, 1, n);
  // Smallest k with u <= k/n, judged against the same rounded k/n that
  // build_pp_plot uses as breakpoints.
  while (rank > 1 && u <= static_cast<double>(rank - 1) / dn) --rank;
  while (rank < n && u > static_cast<double>(rank) / dn) ++rank;
  return sample[rank - 1];
}

StepFunction build_pp_plot(const SortedSample& x_sample,
                           const SortedSample& y_sample) {
  const std::size_t m = x_sample.size();
  const std::size_t n = y_sample.size();
  const auto xs = x_sample.values();
  std::vector<double> breakpoints(n);
  std::vector<double> values(n);
  std::size_t below = 0;  // #{X_i <= Y_(k)}, monotone in k
  for (std::size_t k = 0; k < n; ++k) {
    const double y = y_sample[k];
    while (below < m && xs[below] <= y) ++below;
    breakpoints[k] = static_cast<double>(k + 1) / static_cast<double>(n);
    values[k] = static_cast<double>(below) / static_cast<double>(m);
  }
  return StepFunction(std::move(breakpoints), std::move(values));
}

StepFunction left_continuous_version(const StepFunction& step) {
  if (!step.is_nondecreasing()) {
    throw DomainError("left-continuous version needs a nondecreasing step");
  }
  const auto b = step.breakpoints();
  const auto v = step.values();
  std::vector<double> breakpoints;
  std::vector<double> values;
  for (std::size_t k = 0; k < step.cells(); ++k) {
    if (!values.empty() && values.back() == v[k]) {
      breakpoints.back() = b[k];
    } else {
      breakpoints.push_back(b[k]);
      values.push_back(v[k]);
    }
  }
  return StepFunction(std::move(breakpoints), std::move(values));
}

StepFunction empirical_cdf_step(const SortedSample& unit_sample) {
  const auto u = unit_sample.values();
  const std::size_t n = u.size();
  if (u.front() < 0.0 || u.back() > 1.0) {
    throw DomainError("empirical_cdf_step needs values in [0,1]");
  }
  std::vector<double> breakpoints;
  std::vector<double> values;
  std::size_t i = 0;
  double prev = 0.0;
  while (i < n) {
    const double point = u[i];
    if (point > prev) {
      // Cell (prev, point] carries the count strictly below `point`.
      breakpoints.push_back(point);
      values.push_back(static_cast<double>(i) / static_cast<double>(n));
      prev = point;
    }
    while (i < n && u[i] == point) ++i;
  }
  if (prev < 1.0) {
    breakpoints.push_back(1.0);
    values.push_back(1.0);
  }
  return StepFunction(std::move(breakpoints), std::move(values));
}

}  // namespace ppcurve
