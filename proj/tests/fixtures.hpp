#pragma once

// Chart builders shared by the test binaries. Components are parsed from the
// same expression texts a scenario file would carry.

#include <array>
#include <string>
#include <vector>

#include "riccilab/geometry.hpp"

namespace fixtures {

using riccilab::expr::Expression;
using riccilab::expr::parse;
using riccilab::geom::Geometry;
using riccilab::geom::MetricComponents;

inline const std::vector<std::string> kCartesian = {"t", "x", "y", "z"};
inline const std::vector<std::string> kSpherical = {"t", "r", "theta", "phi"};
inline const std::vector<std::string> kNullSpherical = {"v", "r", "theta", "phi"};

inline MetricComponents parse_metric(const std::array<std::array<const char*, 4>, 4>& texts,
                                     const std::vector<std::string>& coords) {
  MetricComponents mc;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      mc[i][j] = parse(texts[i][j], coords);
  return mc;
}

/// diag(-1, 1, 1, 1) on (t, x, y, z).
inline Geometry minkowski() {
  return Geometry::build(parse_metric({{{"-1", "0", "0", "0"},
                                        {"0", "1", "0", "0"},
                                        {"0", "0", "1", "0"},
                                        {"0", "0", "0", "1"}}},
                                      kCartesian),
                         kCartesian);
}

/// diag(-1, e^{2t}, e^{2t}, e^{2t}) on (t, x, y, z): unit expanding universe.
inline Geometry desitter() {
  return Geometry::build(parse_metric({{{"-1", "0", "0", "0"},
                                        {"0", "exp(2*t)", "0", "0"},
                                        {"0", "0", "exp(2*t)", "0"},
                                        {"0", "0", "0", "exp(2*t)"}}},
                                      kCartesian),
                         kCartesian);
}

/// diag(-(1-2/r), 1/(1-2/r), r^2, r^2 sin^2 theta) on (t, r, theta, phi),
/// mass parameter 1.
inline Geometry schwarzschild() {
  return Geometry::build(parse_metric({{{"-(1-2/r)", "0", "0", "0"},
                                        {"0", "1/(1-2/r)", "0", "0"},
                                        {"0", "0", "r^2", "0"},
                                        {"0", "0", "0", "r^2*sin(theta)^2"}}},
                                      kSpherical),
                         kSpherical);
}

/// The same black hole in ingoing null coordinates (v, r, theta, phi):
/// g = -(1-2/r) dv^2 + 2 dv dr + r^2 dOmega^2. Exercises an off-diagonal
/// time-radius block.
inline Geometry eddington_finkelstein() {
  return Geometry::build(parse_metric({{{"-(1-2/r)", "1", "0", "0"},
                                        {"1", "0", "0", "0"},
                                        {"0", "0", "r^2", "0"},
                                        {"0", "0", "0", "r^2*sin(theta)^2"}}},
                                      kNullSpherical),
                         kNullSpherical);
}

}  // namespace fixtures
