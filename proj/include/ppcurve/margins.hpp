#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ppcurve/empirical.hpp"

namespace ppcurve {

struct Atom {
  double point;
  double mass;
};

struct UniformFamily {
  double a;
  double b;
  bool operator==(const UniformFamily&) const = default;
};

struct NormalFamily {
  double mu;
  double sigma;
  bool operator==(const NormalFamily&) const = default;
};

struct ExponentialFamily {
  double rate;
  bool operator==(const ExponentialFamily&) const = default;
};

struct DiscreteAtomsFamily {
  std::vector<double> points;
  std::vector<double> probs;
  bool operator==(const DiscreteAtomsFamily&) const = default;
};

// Atom of mass `atom_mass` at `atom_point`, remaining mass uniform on [a,b].
struct MixtureAtomUniformFamily {
  double atom_point;
  double atom_mass;
  double a;
  double b;
  bool operator==(const MixtureAtomUniformFamily&) const = default;
};

// A univariate distribution from the closed catalog above. Immutable; the
// factory functions reject parameters that violate a family's invariants.
//
// Quantiles use the left-continuous generalized inverse
//   Q(u) = inf{x : F(x) >= u},  0 < u < 1.
//
// Spec strings (see docs/formats.md):
//   uniform:A,B   normal:MU,SIGMA   exponential:RATE
//   atoms:P1=M1,P2=M2,...   atomunif:POINT,MASS,A,B
class MarginModel {
 public:
  using Family = std::variant<UniformFamily, NormalFamily, ExponentialFamily,
                              DiscreteAtomsFamily, MixtureAtomUniformFamily>;

  static MarginModel uniform(double a, double b);
  static MarginModel normal(double mu, double sigma);
  static MarginModel exponential(double rate);
  static MarginModel discrete_atoms(std::vector<double> points,
                                    std::vector<double> probs);
  static MarginModel mixture_atom_uniform(double atom_point, double atom_mass,
                                          double a, double b);

  static MarginModel parse(std::string_view spec);
  std::string to_spec() const;

  const Family& family() const { return family_; }

  // P(X <= x).
  double cdf(double x) const;
  // P(X < x).
  double cdf_left(double x) const;
  double quantile(double u) const;

  // Lebesgue density, only for the continuous families.
  bool has_density() const;
  std::optional<double> density(double x) const;

  std::vector<Atom> atoms() const;

  // Closed interval carrying the diffuse (non-atomic) part, if any.
  std::optional<std::pair<double, double>> diffuse_support() const;

  // Infimum / supremum of the support (may be infinite).
  double support_lower() const;
  double support_upper() const;

  bool operator==(const MarginModel& other) const {
    return family_ == other.family_;
  }

 private:
  explicit MarginModel(Family family);

  Family family_;
  // Running sums of the atom probabilities (DiscreteAtoms only); last entry 1.
  std::vector<double> cumulative_;
};

double margin_cdf(const MarginModel& model, double x);
double margin_qf(const MarginModel& model, double u);
// Inverse-transform draw: equals margin_qf(model, u).
double sample_margin(const MarginModel& model, double u);

enum class AcClass { AbsolutelyContinuous, NotAbsolutelyContinuous, Unknown };

std::string_view to_string(AcClass c);

AcClass classify_ac(const MarginModel& f_model, const MarginModel& g_model);

// The population P-P curve R(u) = F(Q(u)) on (0,1), extended to [0,1] by its
// one-sided limits, where F is the cdf of X and Q the quantile function of Y.
class PPCurve {
 public:
  PPCurve(MarginModel f_model, MarginModel g_model);

  // The identity curve (F = G = Uniform(0,1)).
  static PPCurve identity();

  const MarginModel& f_model() const { return f_; }
  const MarginModel& g_model() const { return g_; }
  double endpoint_lo() const { return endpoint_lo_; }
  double endpoint_hi() const { return endpoint_hi_; }
  AcClass ac_class() const { return ac_class_; }

  double operator()(double u) const;

  // Density r of R. Analytic f(Q(u))/g(Q(u)) when both margins have
  // densities, a central difference with h = 1e-5 otherwise, and 1 where the
  // analytic ratio is 0/0. Throws InvalidState for curves that are not
  // absolutely continuous.
  double density(double u) const;

  // Exact step representation of R when Y is purely atomic.
  std::optional<StepFunction> as_step() const;

 private:
  MarginModel f_;
  MarginModel g_;
  double endpoint_lo_;
  double endpoint_hi_;
  AcClass ac_class_;
};

double pp_curve_eval(const PPCurve& curve, double u);
double pp_density_eval(const PPCurve& curve, double u);

}  // namespace ppcurve
