#include "ppcurve/copulas.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppcurve/errors.hpp"
#include "ppcurve/special.hpp"
#include "ppcurve/text.hpp"

namespace ppcurve {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Keeps transformed draws inside the open unit square.
double open_unit(double x) {
  constexpr double lo = 0x1.0p-60;
  constexpr double hi = 1.0 - 0x1.0p-53;
  return std::clamp(x, lo, hi);
}

}  // namespace

CopulaModel CopulaModel::gaussian(double rho) {
  if (!(std::abs(rho) <= kMaxGaussianRho)) {
    throw InvalidParameter("gaussian copula needs |rho| <= 0.999");
  }
  return CopulaModel(GaussianCopula{rho});
}

CopulaModel CopulaModel::clayton(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw InvalidParameter("clayton copula needs theta > 0");
  }
  return CopulaModel(ClaytonCopula{theta});
}

CopulaModel CopulaModel::parse(std::string_view spec) {
  const std::string_view s = trim(spec);
  const auto colon = s.find(':');
  const std::string_view name = s.substr(0, colon);
  const bool has_param = colon != std::string_view::npos;
  const auto param = [&] {
    if (!has_param) {
      throw InvalidParameter("copula spec '" + std::string(spec) + "' needs a parameter");
    }
    return parse_real(s.substr(colon + 1), "copula parameter");
  };
  const auto no_param = [&] {
    if (has_param) {
      throw InvalidParameter("copula spec '" + std::string(spec) + "' takes no parameter");
    }
  };
  if (name == "product") return no_param(), product();
  if (name == "comonotone") return no_param(), comonotone();
  if (name == "countermonotone") return no_param(), countermonotone();
  if (name == "gaussian") return gaussian(param());
  if (name == "clayton") return clayton(param());
  throw InvalidParameter("unknown copula family '" + std::string(name) + "'");
}

std::string CopulaModel::to_spec() const {
  return std::visit(
      Overloaded{
          [](const ProductCopula&) { return std::string("product"); },
          [](const GaussianCopula& c) { return "gaussian:" + format_real(c.rho); },
          [](const ClaytonCopula& c) { return "clayton:" + format_real(c.theta); },
          [](const ComonotoneCopula&) { return std::string("comonotone"); },
          [](const CountermonotoneCopula&) { return std::string("countermonotone"); },
      },
      family_);
}

double CopulaModel::cdf(double u, double v) const {
  u = std::clamp(u, 0.0, 1.0);
  v = std::clamp(v, 0.0, 1.0);
  if (u == 0.0 || v == 0.0) return 0.0;
  if (u == 1.0) return v;
  if (v == 1.0) return u;
  return std::visit(
      Overloaded{
          [&](const ProductCopula&) { return u * v; },
          [&](const GaussianCopula& c) {
            return bivariate_normal_cdf(normal_quantile(u), normal_quantile(v), c.rho);
          },
          [&](const ClaytonCopula& c) {
            const double s = std::pow(u, -c.theta) + std::pow(v, -c.theta) - 1.0;
            return std::pow(s, -1.0 / c.theta);
          },
          [&](const ComonotoneCopula&) { return std::min(u, v); },
          [&](const CountermonotoneCopula&) { return std::max(u + v - 1.0, 0.0); },
      },
      family_);
}

std::pair<double, double> CopulaModel::pair_from_uniforms(double u1, double u2) const {
  return std::visit(
      Overloaded{
          [&](const ProductCopula&) { return std::pair{u1, u2}; },
          [&](const GaussianCopula& c) {
            const double z1 = normal_quantile(u1);
            const double z2 = c.rho * z1 + std::sqrt(1.0 - c.rho * c.rho) * normal_quantile(u2);
            return std::pair{u1, open_unit(normal_cdf(z2))};
          },
          [&](const ClaytonCopula& c) {
            // Conditional inverse: solve dC/du(u1, v) = u2 for v.
            const double t = c.theta;
            const double s = (std::pow(u2, -t / (1.0 + t)) - 1.0) * std::pow(u1, -t) + 1.0;
            return std::pair{u1, open_unit(std::pow(s, -1.0 / t))};
          },
          [&](const ComonotoneCopula&) { return std::pair{u1, u1}; },
          [&](const CountermonotoneCopula&) { return std::pair{u1, 1.0 - u1}; },
      },
      family_);
}

double copula_cdf(const CopulaModel& model, double u, double v) {
  return model.cdf(u, v);
}

std::pair<double, double> sample_copula_pair(const CopulaModel& model,
                                             RngStream& stream) {
  const double u1 = stream.uniform();
  const double u2 = stream.uniform();
  return model.pair_from_uniforms(u1, u2);
}

double sheet_covariance(const CopulaModel& model, std::pair<double, double> p1,
                        std::pair<double, double> p2) {
  const auto [u, v] = p1;
  const auto [u2, v2] = p2;
  return model.cdf(std::min(u, u2), std::min(v, v2)) - model.cdf(u, v) * model.cdf(u2, v2);
}

double bridge_cross_covariance(const CopulaModel& model, double u, double v) {
  return sheet_covariance(model, {u, 1.0}, {1.0, v});
}

}  // namespace ppcurve
