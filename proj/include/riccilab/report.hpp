#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riccilab/scenario.hpp"
#include "riccilab/soliton.hpp"

namespace riccilab::report {

using expr::Point;
using structure::CheckStatus;

/// CLI subcommands. Full is spelled "report" on the command line.
enum class Command { Validate, Curvature, Fluid, Torse, Identities, Classify, Soliton, Full };

/// Throws scenario::ScenarioError on an unknown name (the CLI maps that to exit 2).
Command parse_command(std::string_view name);
const char* command_name(Command c);
const char* status_name(CheckStatus s);

/// One report line: worst residual over all sample points (and argument fields,
/// where the check quantifies over a family).
struct CheckLine {
  std::string module;
  std::string name;
  std::string tag;  // equation tag, "-" when the check has none
  double residual = 0.0;
  CheckStatus status = CheckStatus::Pass;
};

struct FluidRow {
  Point point{};
  double a = 0.0;
  double b = 0.0;
  double sigma = 0.0;
  double rho = 0.0;
  double scalar_curv = 0.0;
  double fit_residual = 0.0;
};

/// Soliton summary for a declared potential V.
struct PotentialVerdict {
  double lambda_soliton = 0.0;
  bool lambda_given = false;  // declared in the scenario vs derived from the fluid
  soliton::SolitonClass cls = soliton::SolitonClass::Steady;
  double exactness = 0.0;       // max_abs of L_V g + 2S + 2 Lambda g over points
  double residual_norm2 = 0.0;  // metric-square norm at the worst point
  bool exact = false;
};

struct Report {
  std::string name;
  std::string digest;
  std::string command;
  int points = 0;
  double tolerance = 1e-8;
  double lambda = 0.0;
  double kappa = 1.0;
  std::string xi_mode;  // "declared" | "effective" | "none"
  bool has_potential = false;

  std::vector<CheckLine> checks;

  bool fluid_ran = false;
  std::vector<FluidRow> fluid_rows;

  std::optional<structure::TorseCheck> torse;
  std::optional<structure::ConformalFlatness> conformal;
  std::optional<structure::ConstantCurvatureFit> constant_curvature;
  std::optional<structure::QuasiConstantFit> quasi_constant;
  std::optional<structure::SemiSymmetry> semi_symmetry;
  std::optional<structure::ParallelReport> parallel;
  std::optional<structure::KillingReport> killing;
  std::optional<soliton::SolitonVerdict> xi_verdict;
  std::optional<PotentialVerdict> potential_verdict;

  int passed = 0;
  int failed = 0;
  int vacuous = 0;
  int not_applicable = 0;
  bool overall_pass = true;  // fail iff any non-vacuous check fails
};

/// Runs the requested check groups against a validated scenario.
Report run(const scenario::Scenario& scn, Command cmd);

/// Deterministic renderings: identical Report => identical bytes.
std::string render_text(const Report& r);
std::string render_json(const Report& r);

}  // namespace riccilab::report
