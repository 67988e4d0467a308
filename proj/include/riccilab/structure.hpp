#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "riccilab/fluid.hpp"
#include "riccilab/geometry.hpp"

namespace riccilab::structure {

using expr::Point;
using field::TensorField;

enum class CheckStatus { Pass, Fail, Vacuous, NotApplicable };

/// One identity, one residual: max_abs over every sample point and every
/// basis-field argument slot. A failed hypothesis downgrades Fail to Vacuous —
/// the theorems are conditionals and we report both halves.
struct IdentityResult {
  std::string name;
  std::string tag;  // equation tag used in reports, e.g. "eq2.7"
  double residual = 0.0;
  bool applicable = true;

  CheckStatus status(double tol) const {
    if (!applicable) return CheckStatus::Vacuous;
    return residual <= tol ? CheckStatus::Pass : CheckStatus::Fail;
  }
};

/// Argument fields for the operator identities: the four coordinate fields,
/// xi, and two pseudo-random constant-coefficient fields drawn from
/// splitmix64(seed) — finite but non-axis-aligned coverage.
struct BasisField {
  std::string name;
  TensorField v;      // {Up}
  TensorField nabla;  // {Up, Down}, direction last
};

std::vector<BasisField> make_basis(const geom::Geometry& geo, const TensorField& xi,
                                   std::uint64_t seed);

/// residual = max_abs(nabla xi - id - xi (x) eta) as a (1,1) matrix — the
/// defining transport law evaluated on the coordinate basis; unit_check =
/// max |g(xi,xi) + 1|; fitted_f = least-squares f in nabla_X xi ~ f[X + eta(X)xi]
/// at the worst point (diagnostic for generalized transport laws).
struct TorseCheck {
  double residual = 0.0;
  double unit_check = 0.0;
  double fitted_f = 0.0;

  bool holds(double tol) const { return residual <= tol && unit_check <= tol; }
};

TorseCheck torse_forming_check(const geom::Geometry& geo, const geom::XiFields& xf,
                               std::span<const Point> pts);

/// Six results tagged eq2.5 .. eq2.10; vacuous unless the transport law holds.
std::vector<IdentityResult> theorem_2_1_suite(const geom::Geometry& geo,
                                              const geom::XiFields& xf,
                                              const std::vector<BasisField>& basis,
                                              std::span<const Point> pts, double tol);

/// Three results tagged eq2.11 .. eq2.13 (eq2.11 carries both equalities).
std::vector<IdentityResult> theorem_2_2_suite(const geom::Geometry& geo,
                                              const geom::XiFields& xf,
                                              const std::vector<BasisField>& basis,
                                              std::span<const Point> pts, double tol);

struct ConformalFlatness {
  double max_weyl = 0.0;
  double max_div_weyl = 0.0;  // (nabla C)^m_{kij;m}

  bool flat(double tol) const { return max_weyl <= tol; }
};

ConformalFlatness conformal_flatness_check(const geom::Geometry& geo, std::span<const Point> pts);

/// Least-squares kappa0 in R04 = kappa0 [g(x)g - g(x)g] (the constant-curvature
/// model), per point via the normal equations, worst point reported. The
/// expected value (lambda + kappa sigma)/3 and the vacuum split b ~ 0 close the
/// conformally-flat classification loop.
struct ConstantCurvatureFit {
  double kappa0 = 0.0;
  double fit_residual = 0.0;
  double expected = 0.0;  // (lambda + kappa sigma)/3
  double mismatch = 0.0;  // |kappa0 - expected|
  double b = 0.0;         // quasi-Einstein b at the worst point
  bool applicable = true;  // conformally flat at tolerance?
};

ConstantCurvatureFit constant_curvature_check(const geom::Geometry& geo,
                                              const geom::XiFields& xf, double lambda,
                                              double kappa, std::span<const Point> pts,
                                              double tol);

/// Least-squares (m, n) over all 256 lowered-curvature components of the
/// quasi-constant model with A = eta; worst point reported.
struct QuasiConstantFit {
  double m = 0.0;
  double n = 0.0;
  double fit_residual = 0.0;
};

QuasiConstantFit quasi_constant_fit(const geom::Geometry& geo, const geom::XiFields& xf,
                                    std::span<const Point> pts);

struct SemiSymmetry {
  double r_dot_r = 0.0;  // max_abs R(X,Y).R
  double r_dot_s = 0.0;  // max_abs R(X,Y).S
};

SemiSymmetry semi_symmetry_check(const geom::Geometry& geo, std::span<const Point> pts);

/// Parallel-candidate report: is nabla alpha = 0, and if so does alpha land on
/// the constant-multiple branch alpha = -alpha(xi,xi) g, or does the scalar
/// branch |lambda + kappa sigma| ~ 0 rescue the dichotomy?
struct ParallelReport {
  double nabla_alpha = 0.0;
  bool parallel = false;
  double alpha_xi_xi = 0.0;         // value at the first point
  double alpha_xi_xi_spread = 0.0;  // max deviation across points
  double recovered_constant = 0.0;  // -alpha(xi,xi)
  double multiple_residual = 0.0;   // max_abs(alpha + alpha(xi,xi) g)
  double lambda_branch_value = 0.0; // worst |lambda + kappa sigma|
  bool dichotomy = false;           // meaningful only when parallel
};

ParallelReport parallel_tensor_check(const geom::Geometry& geo, const geom::XiFields& xf,
                                     const TensorField& alpha, double lambda, double kappa,
                                     std::span<const Point> pts, double tol);

/// Killing / affine-Killing / Jacobi residuals for a vector field V, the
/// affine=>Jacobi implication, and the gated xi-Killing consequences
/// nabla_xi Q = 0 and (nabla_X Q)xi = -kappa(sigma+rho) nabla_X xi.
struct KillingReport {
  double killing = 0.0;      // max_abs L_V g
  double affine = 0.0;       // max_abs L_V nabla
  double jacobi = 0.0;       // max_abs nabla_xi nabla_xi V + R(V,xi)xi
  bool implication_applicable = false;  // affine <= tol?
  bool implication_holds = false;       // vacuous or jacobi <= tol
  double xi_killing = 0.0;   // max_abs L_xi g (hypothesis residual)
  double nabla_xi_q = 0.0;   // max_abs nabla_xi Q
  double nabla_q_xi = 0.0;   // max_abs (nabla_X Q)xi + kappa(sigma+rho) nabla_X xi
};

KillingReport killing_checks(const geom::Geometry& geo, const geom::XiFields& xf,
                             const TensorField& v, std::span<const Point> pts, double tol);

}  // namespace riccilab::structure
