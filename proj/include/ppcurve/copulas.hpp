#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "ppcurve/random.hpp"

namespace ppcurve {

struct ProductCopula {
  bool operator==(const ProductCopula&) const = default;
};
struct GaussianCopula {
  double rho;
  bool operator==(const GaussianCopula&) const = default;
};
struct ClaytonCopula {
  double theta;
  bool operator==(const ClaytonCopula&) const = default;
};
struct ComonotoneCopula {
  bool operator==(const ComonotoneCopula&) const = default;
};
struct CountermonotoneCopula {
  bool operator==(const CountermonotoneCopula&) const = default;
};

// Bivariate copula from a closed catalog. Spec strings: `product`,
// `gaussian:RHO` (|RHO| <= 0.999), `clayton:THETA` (THETA > 0),
// `comonotone`, `countermonotone`.
class CopulaModel {
 public:
  using Family = std::variant<ProductCopula, GaussianCopula, ClaytonCopula,
                              ComonotoneCopula, CountermonotoneCopula>;

  static CopulaModel product() { return CopulaModel(ProductCopula{}); }
  static CopulaModel gaussian(double rho);
  static CopulaModel clayton(double theta);
  static CopulaModel comonotone() { return CopulaModel(ComonotoneCopula{}); }
  static CopulaModel countermonotone() {
    return CopulaModel(CountermonotoneCopula{});
  }

  static CopulaModel parse(std::string_view spec);
  std::string to_spec() const;

  const Family& family() const { return family_; }
  bool is_product() const { return std::holds_alternative<ProductCopula>(family_); }

  double cdf(double u, double v) const;

  // Maps two independent uniforms to a pair with this copula. The first
  // uniform is always the first coordinate.
  std::pair<double, double> pair_from_uniforms(double u1, double u2) const;

  bool operator==(const CopulaModel& other) const { return family_ == other.family_; }

 private:
  explicit CopulaModel(Family family) : family_(family) {}
  Family family_;
};

inline constexpr double kMaxGaussianRho = 0.999;

double copula_cdf(const CopulaModel& model, double u, double v);

std::pair<double, double> sample_copula_pair(const CopulaModel& model,
                                             RngStream& stream);

// Covariance of the tied-down Brownian sheet with intensity C:
//   C(u ^ u', v ^ v') - C(u,v) C(u',v').
double sheet_covariance(const CopulaModel& model, std::pair<double, double> p1,
                        std::pair<double, double> p2);

// Cov(B1(u), B2(v)) = C(u,v) - uv for the edge bridges B1 = B(., 1), B2 = B(1, .).
double bridge_cross_covariance(const CopulaModel& model, double u, double v);

}  // namespace ppcurve
