#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ppcurve/copulas.hpp"
#include "ppcurve/functionals.hpp"
#include "ppcurve/margins.hpp"
#include "ppcurve/parallel.hpp"
#include "ppcurve/random.hpp"

namespace ppcurve {

inline constexpr std::size_t kDefaultGridCells = 512;

// Limit law  kappa * B1(R(u)) - r(u) * B2(u)  on the midpoint grid, where
// (B1, B2) are the edge bridges of the tied-down Brownian sheet with
// intensity `copula`. kappa = 1 for paired data; sqrt(rho / (1 - rho)) with
// the product copula for two independent samples.
struct LimitSpec {
  PPCurve curve;
  CopulaModel copula = CopulaModel::product();
  double kappa = 1.0;
  std::size_t grid = kDefaultGridCells;
};

// One draw of the bridge pair on the grid, together with the path.
struct LimitDraw {
  std::vector<double> b1;  // B1(R(u_j))
  std::vector<double> b2;  // B2(u_j)
  std::vector<double> path;
};

class LimitSampler {
 public:
  explicit LimitSampler(const LimitSpec& spec);

  std::size_t grid() const { return grid_; }
  double kappa() const { return kappa_; }
  double point(std::size_t j) const {
    return (static_cast<double>(j) + 0.5) / static_cast<double>(grid_);
  }
  std::span<const double> curve_values() const { return curve_values_; }
  std::span<const double> density_values() const { return density_values_; }

  // Joint covariance of (B1(R(u_1..J)), B2(u_1..J)).
  const Eigen::MatrixXd& covariance() const { return covariance_; }
  // Square root S = P^T L with S S^T = covariance (+ ridge, if one was needed).
  Eigen::MatrixXd factor() const;
  double ridge() const { return ridge_; }
  double factor_residual() const;

  // Draw from 2J standard normals (first J feed B1 in factor order).
  LimitDraw draw_from_normals(std::span<const double> normals) const;
  LimitDraw draw(RngStream& stream) const;

 private:
  std::size_t grid_;
  double kappa_;
  std::vector<double> curve_values_;
  std::vector<double> density_values_;
  Eigen::MatrixXd covariance_;
  Eigen::MatrixXd lower_;
  Eigen::PermutationMatrix<Eigen::Dynamic> permutation_;
  double ridge_ = 0.0;
};

LimitSampler build_limit_sampler(const LimitSpec& spec);

GridFunction simulate_limit_path(const LimitSampler& sampler, RngStream& stream);

// Midpoint-rule L1 norms of `draws` independent paths; draw i uses substream
// (seed, tag, 0, i).
std::vector<double> limit_norm_samples(const LimitSampler& sampler, std::size_t draws,
                                       std::uint64_t seed,
                                       std::uint64_t tag = stream_tag("limit"),
                                       Execution exec = {});

// How the large-n oracle generates data: paired draws through the copula, or
// two independent samples of sizes m and n.
struct OracleDesign {
  bool paired = true;
  std::size_t m = 0;  // ignored for paired designs
};

// Draws one paired data set (X_i, Y_i) = (F^-1(U_i), G^-1(V_i)) with (U,V) ~ copula.
SampleData draw_paired_sample(const PPCurve& curve, const CopulaModel& copula,
                              std::size_t n, RngStream& stream);
// Draws independent samples X_1..X_m ~ F and Y_1..Y_n ~ G.
SampleData draw_independent_samples(const PPCurve& curve, std::size_t m,
                                    std::size_t n, RngStream& stream);

// sqrt(n) * ||R_n - R||_1 for one fresh data set of size big_n.
double simulate_limit_oracle(const PPCurve& curve, const CopulaModel& copula,
                             OracleDesign design, std::size_t big_n,
                             RngStream& stream);

}  // namespace ppcurve
