#pragma once

#include <span>
#include <vector>

namespace ppcurve {

// Observations in ascending order. Ties are kept with multiplicity.
class SortedSample {
 public:
  explicit SortedSample(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

// Piecewise-constant function on [0,1]. With b_0 = 0, cell k is (b_{k-1}, b_k]
// and carries values[k-1]. The last breakpoint is 1. At u = 0 the function
// takes the first cell value (its right limit).
class StepFunction {
 public:
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  static StepFunction constant(double value);

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> values() const { return values_; }
  std::size_t cells() const { return values_.size(); }

  double cell_lower(std::size_t k) const {
    return k == 0 ? 0.0 : breakpoints_[k - 1];
  }
  double cell_upper(std::size_t k) const { return breakpoints_[k]; }

  double operator()(double u) const;

  bool is_nondecreasing() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

// Data for the P-P plot: paired observations (x_i, y_i), or two independent
// samples of sizes m and n.
struct SampleData {
  std::vector<double> x;
  std::vector<double> y;
  bool paired = true;

  std::size_t m() const { return x.size(); }
  std::size_t n() const { return y.size(); }
};

// (1/n) #{i : values_i <= x}.
double empirical_cdf_eval(const SortedSample& sample, double x);

// Order statistic of rank ceil(n u), i.e. inf{y : G_n(y) >= u}.
double empirical_qf_eval(const SortedSample& sample, double u);

// P-P plot R_n(u) = F_m(Q_n(u)) of an x-sample of size m against a y-sample
// of size n: breakpoints k/n, cell values F_m(Y_(k)).
StepFunction build_pp_plot(const SortedSample& x_sample,
                           const SortedSample& y_sample);

// Left-continuous modification u -> sup_{v < u} R(v). Cells of the form
// (lo, hi] already make a step function left-continuous, so this validates
// monotonicity and merges equal neighbouring cells.
StepFunction left_continuous_version(const StepFunction& step);

// Empirical cdf of a sample of values in [0,1], as a step function on [0,1]
// (used for sup-distance diagnostics). Equal values are merged.
StepFunction empirical_cdf_step(const SortedSample& unit_sample);

}  // namespace ppcurve
