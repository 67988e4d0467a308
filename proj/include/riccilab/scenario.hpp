#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riccilab/geometry.hpp"

namespace riccilab::scenario {

using expr::Point;
using field::TensorField;

/// Parsed and validated scenario file. Holds the symbolic geometry plus the
/// declared matter data; sample points are fully expanded (explicit points
/// first, then the seeded random block in generation order).
struct Scenario {
  std::string name;
  std::string digest;  // fnv1a-64 of the raw input text, 16 hex digits
  std::vector<std::string> coordinates;
  geom::Geometry geo;
  std::optional<TensorField> xi;         // {U}, validated unit timelike
  std::optional<TensorField> potential;  // {U}
  std::optional<TensorField> alpha;      // {D,D}, symmetric
  double lambda = 0.0;
  double kappa = 1.0;
  std::optional<double> soliton_lambda;
  double tolerance = 1e-8;
  std::vector<Point> points;
  std::uint64_t seed = 0;  // seed used for the random block (0 if none)
};

/// Fail with a scenario-level message; the CLI maps this to exit code 2.
struct ScenarioError : Error {
  using Error::Error;
};

/// Overrides applied before validation and point expansion.
struct Overrides {
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
};

Scenario load_text(const std::string& text, const std::string& name,
                   const Overrides& ov = {});
Scenario load_file(const std::string& path, const Overrides& ov = {});

/// fnv1a-64 over bytes, rendered as 16 lowercase hex digits.
std::string digest_bytes(const std::string& bytes);

}  // namespace riccilab::scenario
