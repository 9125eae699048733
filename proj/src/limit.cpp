#include "ppcurve/limit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppcurve/errors.hpp"
#include "ppcurve/text.hpp"

namespace ppcurve {

namespace {

constexpr double kInitialRidge = 1e-12;
constexpr double kMaxRidge = 1e-8;
constexpr double kRelativePivotFloor = 1e-10;
constexpr double kNegativePivotTolerance = 1e-9;

// Square root of a PSD matrix in the form S = P^T L with L lower triangular.
// Pivoted LDL^T handles the rank-deficient kernels (comonotone and
// countermonotone copulas) without perturbing them; a ridge is added only if
// the pivots come out clearly negative.
bool ldlt_factor(const Eigen::MatrixXd& a, Eigen::MatrixXd& lower_out,
                 Eigen::PermutationMatrix<Eigen::Dynamic>& perm_out) {
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  // Eigen flags any negative pivot, including -1e-16 roundoff on singular
  // matrices, so judge the pivots here instead of trusting info().
  Eigen::VectorXd d = ldlt.vectorD();
  if (!d.allFinite()) return false;
  // Pivots at roundoff level relative to the largest are rank deficiency,
  // not variance; keeping them leaves ~1e-6 noise on degenerate paths.
  const double floor = kRelativePivotFloor * std::max(d.maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) < -kNegativePivotTolerance) return false;
    d(i) = d(i) <= floor ? 0.0 : std::sqrt(d(i));
  }
  Eigen::MatrixXd lower = ldlt.matrixL();
  lower_out = lower * d.asDiagonal();
  perm_out = Eigen::PermutationMatrix<Eigen::Dynamic>(ldlt.transpositionsP());
  return true;
}

}  // namespace

LimitSampler::LimitSampler(const LimitSpec& spec) : grid_(spec.grid), kappa_(spec.kappa) {
  if (spec.curve.ac_class() != AcClass::AbsolutelyContinuous) {
    throw InvalidState("limit process needs an absolutely continuous P-P curve (class " +
                       std::string(to_string(spec.curve.ac_class())) + ")");
  }
  if (grid_ < 2) throw DomainError("limit grid needs J >= 2");
  if (!(kappa_ >= 0.0) || !std::isfinite(kappa_)) throw DomainError("kappa must be >= 0");
  if (kappa_ != 1.0 && !spec.copula.is_product()) {
    throw DomainError("two-sample scaling (kappa != 1) requires the product copula");
  }

  const auto j_count = static_cast<Eigen::Index>(grid_);
  curve_values_.resize(grid_);
  density_values_.resize(grid_);
  for (std::size_t j = 0; j < grid_; ++j) {
    const double u = point(j);
    curve_values_[j] = spec.curve(u);
    density_values_[j] = spec.curve.density(u);
    if (!std::isfinite(density_values_[j])) {
      throw NumericError("P-P density is not finite at grid point u=" + format_real(u));
    }
  }

  covariance_.resize(2 * j_count, 2 * j_count);
  for (Eigen::Index j = 0; j < j_count; ++j) {
    const double s = curve_values_[static_cast<std::size_t>(j)];
    const double u = point(static_cast<std::size_t>(j));
    for (Eigen::Index k = 0; k <= j; ++k) {
      const double s2 = curve_values_[static_cast<std::size_t>(k)];
      const double u2 = point(static_cast<std::size_t>(k));
      const double c11 = std::min(s, s2) - s * s2;
      const double c22 = std::min(u, u2) - u * u2;
      covariance_(j, k) = covariance_(k, j) = c11;
      covariance_(j_count + j, j_count + k) = covariance_(j_count + k, j_count + j) = c22;
    }
    for (Eigen::Index k = 0; k < j_count; ++k) {
      const double v = point(static_cast<std::size_t>(k));
      const double cross = bridge_cross_covariance(spec.copula, s, v);
      covariance_(j, j_count + k) = covariance_(j_count + k, j) = cross;
    }
  }

  if (ldlt_factor(covariance_, lower_, permutation_)) return;
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(2 * j_count, 2 * j_count);
  for (double ridge = kInitialRidge; ridge <= kMaxRidge * 1.0000001; ridge *= 10.0) {
    const Eigen::LLT<Eigen::MatrixXd> llt(covariance_ + ridge * identity);
    if (llt.info() == Eigen::Success) {
      lower_ = llt.matrixL();
      permutation_.setIdentity(2 * j_count);
      ridge_ = ridge;
      return;
    }
  }
  throw NumericError("limit covariance could not be factorized with ridge <= 1e-8");
}

Eigen::MatrixXd LimitSampler::factor() const {
  return permutation_.transpose() * lower_;
}

double LimitSampler::factor_residual() const {
  const Eigen::Index dim = covariance_.rows();
  const Eigen::MatrixXd target =
      covariance_ + ridge_ * Eigen::MatrixXd::Identity(dim, dim);
  const Eigen::MatrixXd s = factor();
  return (s * s.transpose() - target).cwiseAbs().maxCoeff();
}

LimitDraw LimitSampler::draw_from_normals(std::span<const double> normals) const {
  if (normals.size() != 2 * grid_) {
    throw DomainError("limit draw needs 2J standard normals");
  }
  const Eigen::Map<const Eigen::VectorXd> z(normals.data(),
                                            static_cast<Eigen::Index>(normals.size()));
  const Eigen::VectorXd y = lower_.triangularView<Eigen::Lower>() * z;
  const Eigen::VectorXd x = permutation_.transpose() * y;
  LimitDraw out;
  out.b1.resize(grid_);
  out.b2.resize(grid_);
  out.path.resize(grid_);
  for (std::size_t j = 0; j < grid_; ++j) {
    out.b1[j] = x(static_cast<Eigen::Index>(j));
    out.b2[j] = x(static_cast<Eigen::Index>(grid_ + j));
    out.path[j] = kappa_ * out.b1[j] - density_values_[j] * out.b2[j];
  }
  return out;
}

LimitDraw LimitSampler::draw(RngStream& stream) const {
  std::vector<double> z(2 * grid_);
  for (double& v : z) v = stream.normal();
  return draw_from_normals(z);
}

LimitSampler build_limit_sampler(const LimitSpec& spec) { return LimitSampler(spec); }

GridFunction simulate_limit_path(const LimitSampler& sampler, RngStream& stream) {
  return GridFunction(sampler.draw(stream).path);
}

std::vector<double> limit_norm_samples(const LimitSampler& sampler, std::size_t draws,
                                       std::uint64_t seed, std::uint64_t tag,
                                       Execution exec) {
  if (draws < 1) throw DomainError("limit_norm_samples needs draws >= 1");
  return map_indexed<double>(
      draws,
      [&](std::size_t i) {
        RngStream stream = RngStream::substream(seed, tag, 0, i);
        return GridFunction(sampler.draw(stream).path).l1_norm();
      },
      exec);
}

SampleData draw_paired_sample(const PPCurve& curve, const CopulaModel& copula,
                              std::size_t n, RngStream& stream) {
  SampleData data;
  data.paired = true;
  data.x.resize(n);
  data.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [u, v] = sample_copula_pair(copula, stream);
    data.x[i] = sample_margin(curve.f_model(), u);
    data.y[i] = sample_margin(curve.g_model(), v);
  }
  return data;
}

SampleData draw_independent_samples(const PPCurve& curve, std::size_t m,
                                    std::size_t n, RngStream& stream) {
  SampleData data;
  data.paired = false;
  data.x.resize(m);
  data.y.resize(n);
  for (double& x : data.x) x = sample_margin(curve.f_model(), stream.uniform());
  for (double& y : data.y) y = sample_margin(curve.g_model(), stream.uniform());
  return data;
}

double simulate_limit_oracle(const PPCurve& curve, const CopulaModel& copula,
                             OracleDesign design, std::size_t big_n,
                             RngStream& stream) {
  if (big_n < 2) throw DomainError("limit oracle needs big_n >= 2");
  if (!design.paired && design.m < 1) throw DomainError("two-sample oracle needs m >= 1");
  const SampleData data = design.paired
                              ? draw_paired_sample(curve, copula, big_n, stream)
                              : draw_independent_samples(curve, design.m, big_n, stream);
  const StepFunction plot = build_pp_plot(SortedSample(data.x), SortedSample(data.y));
  return std::sqrt(static_cast<double>(big_n)) * l1_step_vs_curve(plot, curve);
}

}  // namespace ppcurve
