#include <catch_amalgamated.hpp>

#include <cmath>

#include <Eigen/Dense>

#include "ppcurve/copulas.hpp"
#include "ppcurve/errors.hpp"
#include "support.hpp"

using namespace ppcurve;
using Catch::Approx;

namespace {

std::vector<CopulaModel> all_copulas() {
  return {CopulaModel::product(),        CopulaModel::gaussian(0.5),
          CopulaModel::gaussian(-0.7),   CopulaModel::clayton(1.0),
          CopulaModel::clayton(4.0),     CopulaModel::comonotone(),
          CopulaModel::countermonotone()};
}

}  // namespace

TEST_CASE("copula cdf examples") {
  CHECK(copula_cdf(CopulaModel::product(), 0.3, 0.6) == Approx(0.18));
  CHECK(copula_cdf(CopulaModel::comonotone(), 0.3, 0.6) == 0.3);
  CHECK(copula_cdf(CopulaModel::countermonotone(), 0.3, 0.6) == 0.0);
  CHECK(copula_cdf(CopulaModel::countermonotone(), 0.7, 0.6) == Approx(0.3));
  CHECK(copula_cdf(CopulaModel::clayton(1.0), 0.5, 0.5) == Approx(1.0 / 3.0).epsilon(1e-14));
  // Gaussian at the medians: Sheppard's 1/4 + asin(rho) / (2 pi).
  CHECK(copula_cdf(CopulaModel::gaussian(0.5), 0.5, 0.5) ==
        Approx(0.25 + std::asin(0.5) / (2.0 * 3.141592653589793)).margin(1e-9));
}

TEST_CASE("copula parameters are validated") {
  CHECK_THROWS_AS(CopulaModel::gaussian(0.9995), InvalidParameter);
  CHECK_THROWS_AS(CopulaModel::gaussian(-1.0), InvalidParameter);
  CHECK_NOTHROW(CopulaModel::gaussian(0.999));
  CHECK_THROWS_AS(CopulaModel::clayton(0.0), InvalidParameter);
  CHECK_THROWS_AS(CopulaModel::parse("frank:2"), InvalidParameter);
  CHECK_THROWS_AS(CopulaModel::parse("gaussian"), InvalidParameter);
  CHECK_THROWS_AS(CopulaModel::parse("product:1"), InvalidParameter);
  for (const CopulaModel& c : all_copulas()) CHECK(CopulaModel::parse(c.to_spec()) == c);
  CHECK(CopulaModel::parse("clayton:2") == CopulaModel::clayton(2.0));
}

TEST_CASE("copulas have uniform margins and satisfy the Frechet bounds") {
  for (const CopulaModel& c : all_copulas()) {
    INFO(c.to_spec());
    for (int i = 0; i <= 100; ++i) {
      const double u = i / 100.0;
      CHECK(c.cdf(u, 0.0) == 0.0);
      CHECK(c.cdf(0.0, u) == 0.0);
      CHECK(c.cdf(u, 1.0) == Approx(u).margin(1e-12));
      CHECK(c.cdf(1.0, u) == Approx(u).margin(1e-12));
      for (int j = 0; j <= 100; j += 5) {
        const double v = j / 100.0;
        const double value = c.cdf(u, v);
        CHECK(value >= std::max(u + v - 1.0, 0.0) - 1e-12);
        CHECK(value <= std::min(u, v) + 1e-12);
      }
    }
  }
}

TEST_CASE("copulas are 2-increasing") {
  auto s = testing::property_stream("two-increasing");
  for (const CopulaModel& c : all_copulas()) {
    for (int i = 0; i < 400; ++i) {
      double u1 = s.uniform(), u2 = s.uniform(), v1 = s.uniform(), v2 = s.uniform();
      if (u1 > u2) std::swap(u1, u2);
      if (v1 > v2) std::swap(v1, v2);
      const double mass = c.cdf(u2, v2) - c.cdf(u1, v2) - c.cdf(u2, v1) + c.cdf(u1, v1);
      CHECK(mass >= -1e-12);
    }
  }
}

TEST_CASE("Gaussian copula near zero correlation matches the product") {
  const CopulaModel g = CopulaModel::gaussian(1e-12);
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double u = i / 20.0;
      const double v = j / 20.0;
      CHECK(g.cdf(u, v) == Approx(u * v).margin(1e-8));
    }
  }
}

TEST_CASE("pair samplers") {
  CHECK(CopulaModel::comonotone().pair_from_uniforms(0.42, 0.9) ==
        std::pair<double, double>{0.42, 0.42});
  const auto [u, v] = CopulaModel::countermonotone().pair_from_uniforms(0.42, 0.9);
  CHECK(u == 0.42);
  CHECK(v == Approx(0.58));

  RngStream s(5);
  const int count = 100000;
  double su = 0, sv = 0, suv = 0;
  for (int i = 0; i < count; ++i) {
    const auto [a, b] = sample_copula_pair(CopulaModel::product(), s);
    su += a;
    sv += b;
    suv += a * b;
  }
  const double cov = suv / count - (su / count) * (sv / count);
  CHECK(std::abs(cov * 12.0) < 0.01);
}

TEST_CASE("sampled pairs reproduce the copula cdf") {
  const int count = 100000;
  for (const CopulaModel& c : all_copulas()) {
    RngStream s = testing::property_stream("copula-sampler", std::hash<std::string>{}(c.to_spec()));
    std::vector<std::pair<double, double>> pairs(count);
    for (auto& p : pairs) p = sample_copula_pair(c, s);
    double worst = 0.0;
    for (int i = 1; i < 21; ++i) {
      for (int j = 1; j < 21; ++j) {
        const double u = i / 21.0;
        const double v = j / 21.0;
        int hits = 0;
        for (const auto& [a, b] : pairs) hits += (a <= u && b <= v) ? 1 : 0;
        worst = std::max(worst, std::abs(static_cast<double>(hits) / count - c.cdf(u, v)));
      }
    }
    INFO(c.to_spec());
    CHECK(worst < 0.01);
  }
}

TEST_CASE("sheet covariance kernel") {
  CHECK(sheet_covariance(CopulaModel::product(), {0.5, 1.0}, {0.5, 1.0}) == Approx(0.25));
  for (const CopulaModel& c : all_copulas()) {
    CHECK(sheet_covariance(c, {0.0, 0.0}, {0.3, 0.8}) == Approx(0.0).margin(1e-15));
  }
  for (double u : {0.1, 0.5, 0.9}) {
    CHECK(sheet_covariance(CopulaModel::comonotone(), {u, u}, {u, u}) == Approx(u - u * u));
  }
  CHECK(bridge_cross_covariance(CopulaModel::product(), 0.3, 0.7) == Approx(0.0).margin(1e-16));
  CHECK(bridge_cross_covariance(CopulaModel::comonotone(), 0.5, 0.5) == Approx(0.25));
  CHECK(bridge_cross_covariance(CopulaModel::countermonotone(), 0.5, 0.5) == Approx(-0.25));
}

TEST_CASE("sheet covariance is symmetric and positive semidefinite") {
  auto s = testing::property_stream("sheet-psd");
  for (const CopulaModel& c : all_copulas()) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::pair<double, double>> pts(8);
      for (auto& p : pts) p = {s.uniform(), s.uniform()};
      Eigen::MatrixXd gram(8, 8);
      for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
          gram(i, j) = sheet_covariance(c, pts[i], pts[j]);
          CHECK(gram(i, j) == sheet_covariance(c, pts[j], pts[i]));
        }
      }
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
      CHECK(eig.eigenvalues().minCoeff() >= -1e-9);
    }
  }
}
