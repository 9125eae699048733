#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ppcurve/empirical.hpp"
#include "ppcurve/margins.hpp"
#include "ppcurve/parallel.hpp"
#include "ppcurve/random.hpp"

namespace ppcurve {

// Multinomial(n; 1/n, ..., 1/n) counts. Sum equals n.
class BootstrapWeights {
 public:
  explicit BootstrapWeights(std::vector<std::uint32_t> weights);

  static BootstrapWeights ones(std::size_t n);

  std::span<const std::uint32_t> values() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  std::uint32_t operator[](std::size_t i) const { return weights_[i]; }

 private:
  std::vector<std::uint32_t> weights_;
};

// Binomial(trials, p) by sequential inversion of the cdf.
std::uint32_t draw_binomial(std::uint32_t trials, double p, RngStream& stream);

// Exact multinomial draw via conditional binomials:
// W_i ~ Bin(n - W_1 - ... - W_{i-1}, 1 / (n - i + 1)).
BootstrapWeights draw_multinomial_weights(std::size_t n, RngStream& stream);

// Pre-sorted view of a data set for repeated weighted P-P plots.
class PPPlotData {
 public:
  explicit PPPlotData(SampleData data);

  const SampleData& data() const { return data_; }

  // Plot with every weight equal to one.
  StepFunction plot() const;

  // Weighted plot R*(u) = F*(Q*(u)) where F* and G* put mass w_i / m and
  // w_i / n on the observations (in the original data order).
  StepFunction weighted_plot(std::span<const std::uint32_t> wx,
                             std::span<const std::uint32_t> wy) const;

 private:
  SampleData data_;
  std::vector<std::size_t> x_order_;
  std::vector<std::size_t> y_order_;
};

// Bootstrap P-P plot. In paired mode pass the same weights twice.
StepFunction bootstrap_pp_plot(std::span<const double> x_values,
                               std::span<const double> y_values,
                               const BootstrapWeights& wx,
                               const BootstrapWeights& wy);

enum class BootstrapStatistic {
  L1ToPlot,   // sqrt(n) * ||R*_n - R_n||_1
  L1ToCurve,  // sqrt(n) * ||R*_n - R||_1 for a supplied curve
};

struct BootstrapRequest {
  std::size_t replicates = 1;
  BootstrapStatistic statistic = BootstrapStatistic::L1ToPlot;
  std::optional<PPCurve> curve;  // required for L1ToCurve
  std::uint64_t seed = 0;
  std::uint64_t tag = stream_tag("bootstrap");
  std::uint64_t stream_n = 0;  // folded into the substream id
  // Test hook: replace every drawn weight vector by these fixed weights.
  std::optional<BootstrapWeights> fixed_x_weights;
  std::optional<BootstrapWeights> fixed_y_weights;
};

// Replicate b draws its weights from substream (seed, tag, stream_n, b).
// Paired data use a single weight vector for both coordinates.
std::vector<double> bootstrap_replicates(const PPPlotData& data,
                                         const BootstrapRequest& request,
                                         Execution exec = {});

}  // namespace ppcurve
