#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "ppcurve/errors.hpp"
#include "ppcurve/margins.hpp"
#include "ppcurve/quadrature.hpp"
#include "ppcurve/special.hpp"
#include "support.hpp"

using namespace ppcurve;
using Catch::Approx;

namespace {

const MarginModel kUnit = MarginModel::uniform(0.0, 1.0);
const MarginModel kBernoulli = MarginModel::discrete_atoms({0.0, 1.0}, {0.5, 0.5});

}  // namespace

TEST_CASE("margin cdf examples") {
  CHECK(margin_cdf(kUnit, 0.3) == Approx(0.3));
  CHECK(margin_cdf(MarginModel::normal(0, 1), 0.0) == 0.5);
  CHECK(margin_cdf(kBernoulli, 0.0) == 0.5);
  CHECK(kBernoulli.cdf_left(0.0) == 0.0);
  CHECK(kBernoulli.cdf_left(1.0) == 0.5);
  const auto mix = MarginModel::mixture_atom_uniform(0.5, 0.3, 0.0, 1.0);
  CHECK(mix.cdf(0.5) == Approx(0.35 + 0.3));
  CHECK(mix.cdf_left(0.5) == Approx(0.35));
  CHECK(mix.cdf(0.25) == Approx(0.7 * 0.25));
}

TEST_CASE("margin quantile examples") {
  CHECK(margin_qf(kUnit, 0.25) == Approx(0.25));
  CHECK(margin_qf(kBernoulli, 0.5) == 0.0);
  CHECK(margin_qf(kBernoulli, 0.5000001) == 1.0);
  CHECK(margin_qf(MarginModel::exponential(1.0), 1.0 - std::exp(-1.0)) ==
        Approx(1.0).epsilon(1e-14));
  CHECK(sample_margin(kUnit, 0.7) == Approx(0.7));
  CHECK(sample_margin(kBernoulli, 0.9) == 1.0);
  CHECK(sample_margin(MarginModel::normal(0, 1), 0.5) == Approx(0.0).margin(1e-15));
  CHECK_THROWS_AS(margin_qf(kUnit, 0.0), DomainError);
  CHECK_THROWS_AS(margin_qf(kUnit, 1.0), DomainError);
  CHECK_THROWS_AS(margin_qf(kUnit, std::nan("")), DomainError);
}

TEST_CASE("margin construction rejects invalid parameters") {
  CHECK_THROWS_AS(MarginModel::uniform(1.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(MarginModel::normal(0.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(MarginModel::exponential(-1.0), InvalidParameter);
  CHECK_THROWS_AS(MarginModel::discrete_atoms({0.0, 1.0}, {0.5, 0.4}), InvalidParameter);
  CHECK_THROWS_AS(MarginModel::discrete_atoms({1.0, 0.0}, {0.5, 0.5}), InvalidParameter);
  CHECK_THROWS_AS(MarginModel::discrete_atoms({0.0, 1.0}, {1.0, 0.0}), InvalidParameter);
  CHECK_THROWS_AS(MarginModel::mixture_atom_uniform(0.5, 1.0, 0.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(MarginModel::mixture_atom_uniform(0.5, 0.3, 1.0, 0.0), InvalidParameter);
}

TEST_CASE("spec strings round-trip") {
  for (const char* spec : {"uniform:0,1", "normal:0,1", "exponential:1", "atoms:0=0.5,1=0.5",
                           "atomunif:0.5,0.3,0,1", "normal:-1.5,0.25"}) {
    const MarginModel m = MarginModel::parse(spec);
    CHECK(MarginModel::parse(m.to_spec()) == m);
  }
  for (const MarginModel& m : testing::catalog_margins()) {
    CHECK(MarginModel::parse(m.to_spec()) == m);
  }
  CHECK(MarginModel::parse("uniform:0,1") == kUnit);
  for (const char* bad : {"", "uniform", "uniform:0", "uniform:0,1,2", "gamma:1,1",
                          "atoms:0=0.5,1", "atoms:", "normal:0,-1", "exponential:x"}) {
    CHECK_THROWS_AS(MarginModel::parse(bad), InvalidParameter);
  }
}

TEST_CASE("cdf is monotone, right-continuous, with limits 0 and 1") {
  for (const MarginModel& m : testing::catalog_margins()) {
    double prev = 0.0;
    for (int i = -400; i <= 400; ++i) {
      const double x = i / 40.0;
      const double c = m.cdf(x);
      CHECK(c >= prev);
      CHECK(c >= 0.0);
      CHECK(c <= 1.0);
      CHECK(m.cdf(x + 1e-12) - c < 1e-9);
      prev = c;
    }
    CHECK(m.cdf(-1e6) < 1e-12);
    CHECK(m.cdf(1e6) > 1.0 - 1e-12);
  }
}

TEST_CASE("Galois property of the quantile function") {
  auto s = testing::property_stream("galois");
  for (const MarginModel& m : testing::catalog_margins()) {
    for (int i = 0; i < 500; ++i) {
      const double u = s.uniform();
      const double q = m.quantile(u);
      const double lo = std::isfinite(m.support_lower()) ? m.support_lower() - 1.0 : -6.0;
      const double hi = std::isfinite(m.support_upper()) ? m.support_upper() + 1.0 : 6.0;
      const double x = testing::uniform_between(s, lo, hi);
      INFO(m.to_spec() << " u=" << u << " x=" << x);
      CHECK((q <= x) == (u <= m.cdf(x)));
      // Atoms and the quantile itself as adversarial x. Continuous families
      // can miss F(Q(u)) >= u by rounding in the last place.
      CHECK(u <= m.cdf(q) + (m.has_density() ? 4e-16 : 0.0));
      for (const Atom& a : m.atoms()) CHECK((q <= a.point) == (u <= m.cdf(a.point)));
    }
  }
}

TEST_CASE("P-P curve examples") {
  const PPCurve id(kUnit, kUnit);
  CHECK(pp_curve_eval(id, 0.4) == Approx(0.4));
  const PPCurve bern(kUnit, kBernoulli);
  CHECK(pp_curve_eval(bern, 0.25) == 0.0);
  CHECK(pp_curve_eval(bern, 0.75) == 1.0);
  CHECK(bern.endpoint_lo() == 0.0);
  CHECK(bern.endpoint_hi() == 1.0);

  const PPCurve nn(MarginModel::normal(0, 1), MarginModel::normal(1, 1));
  CHECK(pp_density_eval(nn, 0.5) == Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(pp_curve_eval(nn, 0.5) == Approx(normal_cdf(1.0)).epsilon(1e-12));
  CHECK(pp_density_eval(id, 0.5) == Approx(1.0));
  const PPCurve half(kUnit, MarginModel::uniform(0.0, 2.0));
  CHECK(pp_density_eval(half, 0.25) == Approx(2.0));
  CHECK(pp_density_eval(half, 0.75) == Approx(0.0).margin(1e-12));
  CHECK(pp_curve_eval(half, 0.75) == 1.0);
  CHECK_THROWS_AS(pp_density_eval(bern, 0.3), InvalidState);
}

TEST_CASE("P-P curve endpoints equal the one-sided limits") {
  const MarginModel mix = MarginModel::mixture_atom_uniform(0.5, 0.3, 0.0, 1.0);
  const std::vector<PPCurve> curves = {
      PPCurve(kUnit, kUnit),
      PPCurve(MarginModel::normal(0, 1), MarginModel::normal(1, 2)),
      PPCurve(MarginModel::exponential(1), MarginModel::uniform(0.5, 3.0)),
      PPCurve(kUnit, kBernoulli),
      PPCurve(mix, kUnit),
      PPCurve(kUnit, mix),
      PPCurve(MarginModel::uniform(0.25, 0.5), kUnit),
      PPCurve(kBernoulli, MarginModel::uniform(-0.5, 2.0)),
  };
  for (const PPCurve& c : curves) {
    INFO(c.f_model().to_spec() << " vs " << c.g_model().to_spec());
    CHECK(std::abs(c(1e-9) - c.endpoint_lo()) < 1e-6);
    CHECK(std::abs(c(1.0 - 1e-9) - c.endpoint_hi()) < 1e-6);
    CHECK(std::abs(c(1e-6) - c(1e-9)) < 1e-5);
    CHECK(c(0.0) == c.endpoint_lo());
    CHECK(c(1.0) == c.endpoint_hi());
  }
}

TEST_CASE("P-P curve is nondecreasing within [0,1]") {
  auto s = testing::property_stream("pp-monotone");
  const auto margins = testing::catalog_margins();
  for (const MarginModel& f : margins) {
    for (const MarginModel& g : margins) {
      const PPCurve c(f, g);
      std::vector<double> u = testing::uniform_sample(s, 300);
      u.push_back(0.0);
      u.push_back(1.0);
      std::sort(u.begin(), u.end());
      double prev = -1.0;
      for (double x : u) {
        const double r = c(x);
        CHECK(r >= prev);
        CHECK(r >= 0.0);
        CHECK(r <= 1.0);
        prev = r;
      }
    }
  }
}

TEST_CASE("absolute continuity classification") {
  const auto mix = MarginModel::mixture_atom_uniform(0.5, 0.3, 0.0, 1.0);
  CHECK(classify_ac(MarginModel::normal(0, 1), MarginModel::normal(1, 2)) ==
        AcClass::AbsolutelyContinuous);
  CHECK(classify_ac(kUnit, kBernoulli) == AcClass::NotAbsolutelyContinuous);
  CHECK(classify_ac(mix, kUnit) == AcClass::NotAbsolutelyContinuous);
  // R = F(Q) with Q mapping onto G's atom: the jump of G becomes a flat piece.
  CHECK(classify_ac(kUnit, mix) == AcClass::AbsolutelyContinuous);
  // An F-atom outside the range of Q leaves R continuous.
  CHECK(classify_ac(MarginModel::mixture_atom_uniform(5.0, 0.3, 0.0, 1.0), kUnit) ==
        AcClass::AbsolutelyContinuous);
  CHECK(classify_ac(MarginModel::mixture_atom_uniform(0.0, 0.3, 0.0, 1.0), kUnit) ==
        AcClass::AbsolutelyContinuous);
  // Disjoint supports: R is constant.
  CHECK(classify_ac(MarginModel::uniform(2.0, 3.0), kUnit) == AcClass::AbsolutelyContinuous);
  // Atoms on both sides.
  CHECK(classify_ac(kBernoulli, kBernoulli) == AcClass::NotAbsolutelyContinuous);
  CHECK(classify_ac(MarginModel::discrete_atoms({0.0}, {1.0}), kBernoulli) ==
        AcClass::AbsolutelyContinuous);
  CHECK(to_string(AcClass::AbsolutelyContinuous) == "absolutely_continuous");
}

TEST_CASE("classification agrees with a numerical jump scan") {
  // A curve is AC on this catalog iff it has no jump. Jumps of catalog curves
  // sit inside (0,1); the scan stays away from the ends, where an unbounded
  // density (normal:1,2 against normal:0,1) makes steep but continuous climbs.
  const auto margins = testing::catalog_margins();
  for (const MarginModel& f : margins) {
    for (const MarginModel& g : margins) {
      const PPCurve c(f, g);
      double max_jump = 0.0;
      const int steps = 20000;
      for (int i = steps / 100; i < steps - steps / 100; ++i) {
        const double u0 = static_cast<double>(i) / steps;
        const double u1 = static_cast<double>(i + 1) / steps;
        max_jump = std::max(max_jump, c(u1) - c(u0));
      }
      const bool jumpy = max_jump > 0.01;
      INFO(f.to_spec() << " / " << g.to_spec() << " jump " << max_jump);
      CHECK(c.ac_class() != AcClass::Unknown);
      CHECK((c.ac_class() == AcClass::NotAbsolutelyContinuous) == jumpy);
    }
  }
}

TEST_CASE("density integrates to the curve increment") {
  auto s = testing::property_stream("density-integral");
  for (const PPCurve& c : testing::ac_curves()) {
    for (int i = 0; i < 5; ++i) {
      double a = testing::uniform_between(s, 0.01, 0.98);
      double b = testing::uniform_between(s, 0.01, 0.98);
      if (a > b) std::swap(a, b);
      const double integral =
          integrate([&](double u) { return c.density(u); }, a, b, 1e-10);
      INFO(c.f_model().to_spec() << " / " << c.g_model().to_spec() << " [" << a << "," << b
                                 << "]");
      CHECK(std::abs(integral - (c(b) - c(a))) < 1e-6);
    }
  }
  // Finite-difference path: F has a density, G is the mixture (flat piece).
  const PPCurve flat(kUnit, MarginModel::mixture_atom_uniform(0.5, 0.3, 0.0, 1.0));
  REQUIRE(flat.ac_class() == AcClass::AbsolutelyContinuous);
  CHECK(flat.density(0.2) == Approx(1.0 / 0.7).epsilon(1e-6));
}

TEST_CASE("directional derivative check along sin(pi u)") {
  // (R(u + t a(u)) - R(u)) / t -> r(u) a(u) in L1 for AC curves.
  const int grid = 4096;
  for (const PPCurve& c : testing::ac_curves()) {
    double previous = std::numeric_limits<double>::infinity();
    for (double t : {1e-2, 1e-3}) {
      double err = 0.0;
      for (int j = 0; j < grid; ++j) {
        const double u = (j + 0.5) / grid;
        const double alpha = std::sin(kPi * u);
        const double moved = std::clamp(u + t * alpha, 0.0, 1.0);
        err += std::abs((c(moved) - c(u)) / t - c.density(u) * alpha) / grid;
      }
      INFO(c.f_model().to_spec() << " / " << c.g_model().to_spec() << " t=" << t);
      // The identity curve has zero error up to rounding.
      CHECK(err <= previous + 1e-12);
      previous = err;
    }
    CHECK(previous < 0.05);
  }
}

TEST_CASE("step representation for atomic y-margins") {
  const PPCurve bern(kUnit, kBernoulli);
  const auto step = bern.as_step();
  REQUIRE(step.has_value());
  for (double u : {0.1, 0.5, 0.51, 0.99}) CHECK((*step)(u) == bern(u));
  CHECK_FALSE(PPCurve(kUnit, kUnit).as_step().has_value());
}
