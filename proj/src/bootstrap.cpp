#include "ppcurve/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ppcurve/errors.hpp"
#include "ppcurve/functionals.hpp"

namespace ppcurve {

namespace {

std::vector<std::size_t> sort_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

}  // namespace

BootstrapWeights::BootstrapWeights(std::vector<std::uint32_t> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw DomainError("bootstrap weights must not be empty");
  std::uint64_t total = 0;
  for (auto w : weights_) total += w;
  if (total != weights_.size()) {
    throw DomainError("bootstrap weights must sum to their length");
  }
}

BootstrapWeights BootstrapWeights::ones(std::size_t n) {
  return BootstrapWeights(std::vector<std::uint32_t>(n, 1));
}

std::uint32_t draw_binomial(std::uint32_t trials, double p, RngStream& stream) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  const double log_q = std::log1p(-p);
  double pmf = std::exp(static_cast<double>(trials) * log_q);
  if (pmf < 1e-280) {
    // Mean far above 1: the inversion start underflows, count Bernoulli trials.
    std::uint32_t k = 0;
    for (std::uint32_t t = 0; t < trials; ++t) k += stream.uniform() < p ? 1 : 0;
    return k;
  }
  const double u = stream.uniform();
  const double odds = p / (1.0 - p);
  double cdf = pmf;
  std::uint32_t k = 0;
  while (u > cdf && k < trials) {
    pmf *= odds * static_cast<double>(trials - k) / static_cast<double>(k + 1);
    ++k;
    cdf += pmf;
  }
  return k;
}

BootstrapWeights draw_multinomial_weights(std::size_t n, RngStream& stream) {
  if (n == 0) throw DomainError("multinomial weights need n >= 1");
  std::vector<std::uint32_t> w(n);
  auto remaining = static_cast<std::uint32_t>(n);
  for (std::size_t i = 0; i + 1 < n && remaining > 0; ++i) {
    const double p = 1.0 / static_cast<double>(n - i);
    w[i] = draw_binomial(remaining, p, stream);
    remaining -= w[i];
  }
  w[n - 1] += remaining;
  return BootstrapWeights(std::move(w));
}

PPPlotData::PPPlotData(SampleData data)
    : data_(std::move(data)),
      x_order_(sort_order(data_.x)),
      y_order_(sort_order(data_.y)) {
  if (data_.x.empty() || data_.y.empty()) throw DomainError("P-P plot needs nonempty samples");
  if (data_.paired && data_.x.size() != data_.y.size()) {
    throw DomainError("paired data need equal column lengths");
  }
}

StepFunction PPPlotData::plot() const {
  return build_pp_plot(SortedSample(data_.x), SortedSample(data_.y));
}

StepFunction PPPlotData::weighted_plot(std::span<const std::uint32_t> wx,
                                       std::span<const std::uint32_t> wy) const {
  if (wx.size() != data_.x.size() || wy.size() != data_.y.size()) {
    throw DomainError("bootstrap weight lengths must match the samples");
  }
  const double m = static_cast<double>(data_.x.size());
  const double n = static_cast<double>(data_.y.size());
  std::vector<double> breakpoints;
  std::vector<double> values;
  breakpoints.reserve(y_order_.size());
  values.reserve(y_order_.size());
  std::uint64_t y_mass = 0;
  std::uint64_t x_mass = 0;
  std::size_t xi = 0;
  std::size_t k = 0;
  while (k < y_order_.size()) {
    // Gather all weight sitting at this y value.
    const double y = data_.y[y_order_[k]];
    std::uint64_t here = 0;
    while (k < y_order_.size() && data_.y[y_order_[k]] == y) {
      here += wy[y_order_[k]];
      ++k;
    }
    if (here == 0) continue;
    y_mass += here;
    while (xi < x_order_.size() && data_.x[x_order_[xi]] <= y) {
      x_mass += wx[x_order_[xi]];
      ++xi;
    }
    breakpoints.push_back(static_cast<double>(y_mass) / n);
    values.push_back(static_cast<double>(x_mass) / m);
  }
  return StepFunction(std::move(breakpoints), std::move(values));
}

StepFunction bootstrap_pp_plot(std::span<const double> x_values,
                               std::span<const double> y_values,
                               const BootstrapWeights& wx, const BootstrapWeights& wy) {
  if (wx.size() != x_values.size() || wy.size() != y_values.size()) {
    throw DomainError("bootstrap weight lengths must match the samples");
  }
  SampleData data{{x_values.begin(), x_values.end()},
                  {y_values.begin(), y_values.end()},
                  x_values.size() == y_values.size()};
  return PPPlotData(std::move(data)).weighted_plot(wx.values(), wy.values());
}

std::vector<double> bootstrap_replicates(const PPPlotData& data,
                                         const BootstrapRequest& request,
                                         Execution exec) {
  if (request.replicates < 1) throw DomainError("bootstrap needs B >= 1");
  if (request.statistic == BootstrapStatistic::L1ToCurve && !request.curve) {
    throw DomainError("l1_to_curve bootstrap statistic needs a curve");
  }
  const SampleData& d = data.data();
  const StepFunction base = data.plot();
  const double root_n = std::sqrt(static_cast<double>(d.n()));
  const auto replicate = [&](std::size_t b) {
    RngStream stream = RngStream::substream(request.seed, request.tag, request.stream_n, b);
    BootstrapWeights wy = request.fixed_y_weights ? *request.fixed_y_weights
                                                  : draw_multinomial_weights(d.n(), stream);
    BootstrapWeights wx = wy;
    if (request.fixed_x_weights) {
      wx = *request.fixed_x_weights;
    } else if (!d.paired) {
      wx = draw_multinomial_weights(d.m(), stream);
    }
    const StepFunction star = data.weighted_plot(wx.values(), wy.values());
    if (request.statistic == BootstrapStatistic::L1ToPlot) {
      return root_n * l1_step_vs_step(star, base);
    }
    return root_n * l1_step_vs_curve(star, *request.curve);
  };
  return map_indexed<double>(request.replicates, replicate, exec);
}

}  // namespace ppcurve
