#include "ppcurve/margins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ppcurve/empirical.hpp"
#include "ppcurve/errors.hpp"
#include "ppcurve/special.hpp"
#include "ppcurve/text.hpp"

namespace ppcurve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double uniform_cdf(double a, double b, double x) {
  if (x <= a) return 0.0;
  if (x >= b) return 1.0;
  return (x - a) / (b - a);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

}  // namespace

MarginModel::MarginModel(Family family) : family_(std::move(family)) {
  if (const auto* d = std::get_if<DiscreteAtomsFamily>(&family_)) {
    cumulative_.resize(d->probs.size());
    std::partial_sum(d->probs.begin(), d->probs.end(), cumulative_.begin());
    cumulative_.back() = 1.0;
  }
}

MarginModel MarginModel::uniform(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b) && b > a,
          "uniform margin needs finite a < b");
  return MarginModel(UniformFamily{a, b});
}

MarginModel MarginModel::normal(double mu, double sigma) {
  require(std::isfinite(mu) && std::isfinite(sigma) && sigma > 0.0,
          "normal margin needs finite mu and sigma > 0");
  return MarginModel(NormalFamily{mu, sigma});
}

MarginModel MarginModel::exponential(double rate) {
  require(std::isfinite(rate) && rate > 0.0,
          "exponential margin needs rate > 0");
  return MarginModel(ExponentialFamily{rate});
}

MarginModel MarginModel::discrete_atoms(std::vector<double> points,
                                        std::vector<double> probs) {
  require(!points.empty() && points.size() == probs.size(),
          "atoms margin needs one probability per point");
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(std::isfinite(points[i]), "atom points must be finite");
    require(probs[i] > 0.0, "atom probabilities must be positive");
    require(i == 0 || points[i] > points[i - 1],
            "atom points must be strictly increasing");
    total += probs[i];
  }
  require(std::abs(total - 1.0) <= 1e-12, "atom probabilities must sum to 1");
  return MarginModel(DiscreteAtomsFamily{std::move(points), std::move(probs)});
}

MarginModel MarginModel::mixture_atom_uniform(double atom_point,
                                              double atom_mass, double a,
                                              double b) {
  require(std::isfinite(atom_point), "atom point must be finite");
  require(atom_mass > 0.0 && atom_mass < 1.0, "atom mass must be in (0,1)");
  require(std::isfinite(a) && std::isfinite(b) && b > a,
          "atomunif margin needs finite a < b");
  return MarginModel(MixtureAtomUniformFamily{atom_point, atom_mass, a, b});
}

double MarginModel::cdf(double x) const {
  return std::visit(
      Overloaded{
          [&](const UniformFamily& f) { return uniform_cdf(f.a, f.b, x); },
          [&](const NormalFamily& f) { return normal_cdf((x - f.mu) / f.sigma); },
          [&](const ExponentialFamily& f) {
            return x <= 0.0 ? 0.0 : -std::expm1(-f.rate * x);
          },
          [&](const DiscreteAtomsFamily& f) {
            const auto it = std::upper_bound(f.points.begin(), f.points.end(), x);
            if (it == f.points.begin()) return 0.0;
            return cumulative_[static_cast<std::size_t>(it - f.points.begin()) - 1];
          },
          [&](const MixtureAtomUniformFamily& f) {
            const double atom = x >= f.atom_point ? f.atom_mass : 0.0;
            return (1.0 - f.atom_mass) * uniform_cdf(f.a, f.b, x) + atom;
          },
      },
      family_);
}

double MarginModel::cdf_left(double x) const {
  return std::visit(
      Overloaded{
          [&](const DiscreteAtomsFamily& f) {
            const auto it = std::lower_bound(f.points.begin(), f.points.end(), x);
            if (it == f.points.begin()) return 0.0;
            return cumulative_[static_cast<std::size_t>(it - f.points.begin()) - 1];
          },
          [&](const MixtureAtomUniformFamily& f) {
            const double atom = x > f.atom_point ? f.atom_mass : 0.0;
            return (1.0 - f.atom_mass) * uniform_cdf(f.a, f.b, x) + atom;
          },
          [&](const auto&) { return cdf(x); },
      },
      family_);
}

double MarginModel::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("quantile needs u in (0,1), got " + format_real(u));
  }
  return std::visit(
      Overloaded{
          [&](const UniformFamily& f) { return f.a + (f.b - f.a) * u; },
          [&](const NormalFamily& f) { return f.mu + f.sigma * normal_quantile(u); },
          [&](const ExponentialFamily& f) { return -std::log1p(-u) / f.rate; },
          [&](const DiscreteAtomsFamily& f) {
            const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
            return f.points[static_cast<std::size_t>(it - cumulative_.begin())];
          },
          [&](const MixtureAtomUniformFamily& f) {
            const double w = f.atom_mass;
            const double below = (1.0 - w) * uniform_cdf(f.a, f.b, f.atom_point);
            double x;
            if (u <= below) {
              x = f.a + (f.b - f.a) * u / (1.0 - w);
            } else if (u <= below + w) {
              return f.atom_point;
            } else {
              x = f.a + (f.b - f.a) * (u - w) / (1.0 - w);
            }
            // Rounding in the linear solve must not break F(Q(u)) >= u.
            while (cdf(x) < u) x = std::nextafter(x, kInf);
            return x;
          },
      },
      family_);
}

bool MarginModel::has_density() const {
  return std::holds_alternative<UniformFamily>(family_) ||
         std::holds_alternative<NormalFamily>(family_) ||
         std::holds_alternative<ExponentialFamily>(family_);
}

std::optional<double> MarginModel::density(double x) const {
  return std::visit(
      Overloaded{
          [&](const UniformFamily& f) -> std::optional<double> {
            return (x >= f.a && x <= f.b) ? 1.0 / (f.b - f.a) : 0.0;
          },
          [&](const NormalFamily& f) -> std::optional<double> {
            return normal_pdf((x - f.mu) / f.sigma) / f.sigma;
          },
          [&](const ExponentialFamily& f) -> std::optional<double> {
            return x < 0.0 ? 0.0 : f.rate * std::exp(-f.rate * x);
          },
          [&](const auto&) -> std::optional<double> { return std::nullopt; },
      },
      family_);
}

std::vector<Atom> MarginModel::atoms() const {
  if (const auto* d = std::get_if<DiscreteAtomsFamily>(&family_)) {
    std::vector<Atom> out;
    for (std::size_t i = 0; i < d->points.size(); ++i) {
      out.push_back({d->points[i], d->probs[i]});
    }
    return out;
  }
  if (const auto* m = std::get_if<MixtureAtomUniformFamily>(&family_)) {
    return {{m->atom_point, m->atom_mass}};
  }
  return {};
}

std::optional<std::pair<double, double>> MarginModel::diffuse_support() const {
  return std::visit(
      Overloaded{
          [](const UniformFamily& f) -> std::optional<std::pair<double, double>> {
            return std::pair{f.a, f.b};
          },
          [](const NormalFamily&) -> std::optional<std::pair<double, double>> {
            return std::pair{-kInf, kInf};
          },
          [](const ExponentialFamily&) -> std::optional<std::pair<double, double>> {
            return std::pair{0.0, kInf};
          },
          [](const DiscreteAtomsFamily&) -> std::optional<std::pair<double, double>> {
            return std::nullopt;
          },
          [](const MixtureAtomUniformFamily& f)
              -> std::optional<std::pair<double, double>> {
            return std::pair{f.a, f.b};
          },
      },
      family_);
}

double MarginModel::support_lower() const {
  double lo = kInf;
  if (const auto d = diffuse_support()) lo = d->first;
  for (const Atom& a : atoms()) lo = std::min(lo, a.point);
  return lo;
}

double MarginModel::support_upper() const {
  double hi = -kInf;
  if (const auto d = diffuse_support()) hi = d->second;
  for (const Atom& a : atoms()) hi = std::max(hi, a.point);
  return hi;
}

std::string MarginModel::to_spec() const {
  return std::visit(
      Overloaded{
          [](const UniformFamily& f) {
            return "uniform:" + format_real(f.a) + "," + format_real(f.b);
          },
          [](const NormalFamily& f) {
            return "normal:" + format_real(f.mu) + "," + format_real(f.sigma);
          },
          [](const ExponentialFamily& f) {
            return "exponential:" + format_real(f.rate);
          },
          [](const DiscreteAtomsFamily& f) {
            std::string s = "atoms:";
            for (std::size_t i = 0; i < f.points.size(); ++i) {
              if (i > 0) s += ",";
              s += format_real(f.points[i]) + "=" + format_real(f.probs[i]);
            }
            return s;
          },
          [](const MixtureAtomUniformFamily& f) {
            return "atomunif:" + format_real(f.atom_point) + "," +
                   format_real(f.atom_mass) + "," + format_real(f.a) + "," +
                   format_real(f.b);
          },
      },
      family_);
}

MarginModel MarginModel::parse(std::string_view spec) {
  const std::string_view s = trim(spec);
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidParameter("margin spec '" + std::string(spec) +
                           "' lacks 'family:parameters'");
  }
  const std::string_view name = s.substr(0, colon);
  const auto fields = split(s.substr(colon + 1), ',');
  const auto expect = [&](std::size_t count) {
    if (fields.size() != count) {
      throw InvalidParameter("margin spec '" + std::string(spec) + "' needs " +
                             std::to_string(count) + " parameters");
    }
  };
  const auto num = [&](std::size_t i) { return parse_real(fields[i], "margin parameter"); };

  if (name == "uniform") {
    expect(2);
    return uniform(num(0), num(1));
  }
  if (name == "normal") {
    expect(2);
    return normal(num(0), num(1));
  }
  if (name == "exponential") {
    expect(1);
    return exponential(num(0));
  }
  if (name == "atomunif") {
    expect(4);
    return mixture_atom_uniform(num(0), num(1), num(2), num(3));
  }
  if (name == "atoms") {
    std::vector<double> points;
    std::vector<double> probs;
    for (std::string_view field : fields) {
      const auto eq = field.find('=');
      if (eq == std::string_view::npos) {
        throw InvalidParameter("atom '" + std::string(field) +
                               "' must be written point=mass");
      }
      points.push_back(parse_real(field.substr(0, eq), "atom point"));
      probs.push_back(parse_real(field.substr(eq + 1), "atom mass"));
    }
    return discrete_atoms(std::move(points), std::move(probs));
  }
  throw InvalidParameter("unknown margin family '" + std::string(name) + "'");
}

double margin_cdf(const MarginModel& model, double x) { return model.cdf(x); }

double margin_qf(const MarginModel& model, double u) { return model.quantile(u); }

double sample_margin(const MarginModel& model, double u) {
  return model.quantile(u);
}

std::string_view to_string(AcClass c) {
  switch (c) {
    case AcClass::AbsolutelyContinuous:
      return "absolutely_continuous";
    case AcClass::NotAbsolutelyContinuous:
      return "not_absolutely_continuous";
    case AcClass::Unknown:
      break;
  }
  return "unknown";
}

// R jumps exactly where the law of F(Y) has a gap in its support, because the
// left-continuous version of R is the quantile function of F(Y). For catalog
// margins the diffuse parts have bounded densities and the quantile functions
// are piecewise smooth, so a continuous R is absolutely continuous. The
// support of F(Y) is the closure of
//   {F(p) : p an atom of Y}  union  F(diffuse support of Y),
// and the image of an interval under F breaks exactly at the atoms of F
// lying strictly inside it.
AcClass classify_ac(const MarginModel& f_model, const MarginModel& g_model) {
  struct Segment {
    double lo;
    double hi;
  };
  std::vector<Segment> segments;
  for (const Atom& a : g_model.atoms()) {
    const double v = f_model.cdf(a.point);
    segments.push_back({v, v});
  }
  if (const auto diffuse = g_model.diffuse_support()) {
    const auto [lo, hi] = *diffuse;
    std::vector<double> cuts;
    for (const Atom& a : f_model.atoms()) {
      if (a.point > lo && a.point < hi) cuts.push_back(a.point);
    }
    double start = std::isfinite(lo) ? f_model.cdf(lo) : 0.0;
    for (double c : cuts) {
      segments.push_back({start, f_model.cdf_left(c)});
      start = f_model.cdf(c);
    }
    const double end = std::isfinite(hi) ? f_model.cdf_left(hi) : 1.0;
    segments.push_back({start, end});
  }
  if (segments.empty()) return AcClass::Unknown;
  for (const Segment& s : segments) {
    if (!std::isfinite(s.lo) || !std::isfinite(s.hi)) return AcClass::Unknown;
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  constexpr double kGapTolerance = 1e-12;
  double reach = segments.front().hi;
  for (std::size_t i = 1; i < segments.size(); ++i) {
    if (segments[i].lo > reach + kGapTolerance) {
      return AcClass::NotAbsolutelyContinuous;
    }
    reach = std::max(reach, segments[i].hi);
  }
  return AcClass::AbsolutelyContinuous;
}

PPCurve::PPCurve(MarginModel f_model, MarginModel g_model)
    : f_(std::move(f_model)), g_(std::move(g_model)) {
  // Q(u) decreases to inf supp G as u -> 0, and F is right-continuous.
  const double q0 = g_.support_lower();
  endpoint_lo_ = std::isfinite(q0) ? f_.cdf(q0) : 0.0;
  // Q(u) increases to sup supp G as u -> 1; it reaches the supremum only when
  // that point is an atom of G, otherwise R picks up the left limit of F.
  const double q1 = g_.support_upper();
  if (!std::isfinite(q1)) {
    endpoint_hi_ = 1.0;
  } else {
    const auto g_atoms = g_.atoms();
    const bool atom_on_top = std::any_of(g_atoms.begin(), g_atoms.end(),
                                         [&](const Atom& a) { return a.point == q1; });
    endpoint_hi_ = atom_on_top ? f_.cdf(q1) : f_.cdf_left(q1);
  }
  ac_class_ = classify_ac(f_, g_);
}

PPCurve PPCurve::identity() {
  return PPCurve(MarginModel::uniform(0.0, 1.0), MarginModel::uniform(0.0, 1.0));
}

double PPCurve::operator()(double u) const {
  if (u <= 0.0) return endpoint_lo_;
  if (u >= 1.0) return endpoint_hi_;
  return f_.cdf(g_.quantile(u));
}

double PPCurve::density(double u) const {
  if (ac_class_ == AcClass::NotAbsolutelyContinuous) {
    throw InvalidState("P-P curve density requested for a curve that is not "
                       "absolutely continuous");
  }
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("P-P density needs u in (0,1), got " + format_real(u));
  }
  if (f_.has_density() && g_.has_density()) {
    const double q = g_.quantile(u);
    const double num = *f_.density(q);
    const double den = *g_.density(q);
    if (num == 0.0 && den == 0.0) return 1.0;
    if (den > 0.0) return num / den;
  }
  constexpr double h = 1e-5;
  const PPCurve& r = *this;
  if (u - h < 0.0) return (r(u + h) - r(u)) / h;
  if (u + h > 1.0) return (r(u) - r(u - h)) / h;
  return (r(u + h) - r(u - h)) / (2.0 * h);
}

std::optional<StepFunction> PPCurve::as_step() const {
  const auto* d = std::get_if<DiscreteAtomsFamily>(&g_.family());
  if (d == nullptr) return std::nullopt;
  std::vector<double> breakpoints;
  std::vector<double> values;
  for (std::size_t k = 0; k < d->points.size(); ++k) {
    breakpoints.push_back(g_.cdf(d->points[k]));
    values.push_back(f_.cdf(d->points[k]));
  }
  return StepFunction(std::move(breakpoints), std::move(values));
}

double pp_curve_eval(const PPCurve& curve, double u) { return curve(u); }

double pp_density_eval(const PPCurve& curve, double u) {
  return curve.density(u);
}

}  // namespace ppcurve
