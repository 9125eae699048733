#pragma once

#include <cstdint>
#include <vector>

#include "ppcurve/margins.hpp"
#include "ppcurve/random.hpp"

namespace ppcurve::testing {

// Hand-rolled generators for property tests. Each property uses its own tag
// so adding a test does not shift the draws of another.
inline RngStream property_stream(std::string_view name, std::uint64_t index = 0) {
  return RngStream::substream(20240601, stream_tag(name), 0, index);
}

inline double uniform_between(RngStream& s, double lo, double hi) {
  return lo + (hi - lo) * s.uniform();
}

inline std::vector<double> uniform_sample(RngStream& s, std::size_t n) {
  std::vector<double> out(n);
  for (double& v : out) v = s.uniform();
  return out;
}

// Catalog margins used across tests; one of each family plus variants.
inline std::vector<MarginModel> catalog_margins() {
  return {
      MarginModel::uniform(0.0, 1.0),
      MarginModel::uniform(-1.0, 2.0),
      MarginModel::normal(0.0, 1.0),
      MarginModel::normal(1.0, 2.0),
      MarginModel::exponential(1.5),
      MarginModel::discrete_atoms({0.0, 1.0}, {0.5, 0.5}),
      MarginModel::discrete_atoms({-1.0, 0.25, 3.0}, {0.2, 0.5, 0.3}),
      MarginModel::mixture_atom_uniform(0.5, 0.3, 0.0, 1.0),
  };
}

// Absolutely continuous catalog curves with a finite density on the grid.
inline std::vector<PPCurve> ac_curves() {
  return {
      PPCurve(MarginModel::uniform(0.0, 1.0), MarginModel::uniform(0.0, 1.0)),
      PPCurve(MarginModel::normal(0.0, 1.0), MarginModel::normal(1.0, 1.0)),
      PPCurve(MarginModel::normal(0.0, 1.0), MarginModel::normal(1.0, 2.0)),
      PPCurve(MarginModel::uniform(0.0, 1.0), MarginModel::uniform(0.0, 2.0)),
      PPCurve(MarginModel::exponential(1.0), MarginModel::exponential(2.0)),
  };
}

}  // namespace ppcurve::testing
