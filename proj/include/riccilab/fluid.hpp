#pragma once

#include "riccilab/tensor.hpp"

namespace riccilab::fluid {

using tensor::MetricValue;
using tensor::Tensor;

/// Quasi-Einstein projection of the Ricci tensor against a unit timelike xi:
/// S = a g + b eta (x) eta.  a and b come from the trace and the (xi,xi)
/// evaluation, so they are exact when the form holds and the least-squares
/// projections when it does not; fit_residual tells which case we are in.
struct QuasiEinstein {
  double a = 0.0;
  double b = 0.0;
  double fit_residual = 0.0;  // max_abs of S - a g - b eta(x)eta
  double s_xi_xi = 0.0;       // S(xi, xi)
  double scalar_curv = 0.0;   // r = g^{kj} S_{kj}

  bool valid(double tol) const { return fit_residual <= tol; }
};

/// a = (r + S(xi,xi))/3, b = S(xi,xi) + a.  Throws unless g(xi,xi) = -1
/// within 1e-8.
QuasiEinstein decompose_quasi_einstein(const Tensor& ricci, const MetricValue& m,
                                       const Tensor& xi);

struct FluidParams {
  double sigma = 0.0;  // energy density
  double rho = 0.0;    // isotropic pressure
};

/// Inverts a = lambda + kappa(sigma - rho)/2, b = kappa(sigma + rho).
/// Throws when kappa = 0.
FluidParams extract_fluid_params(const QuasiEinstein& qe, double lambda, double kappa);

/// T = rho g + (sigma + rho) eta (x) eta, valence {Down, Down}.
Tensor energy_momentum(const MetricValue& m, const Tensor& eta, const FluidParams& fp);

/// S + (lambda - r/2) g - kappa T; vanishes exactly on a perfect-fluid chart.
Tensor einstein_residual(const Tensor& ricci, double scalar_curv, const MetricValue& m,
                         const Tensor& energy_momentum, double lambda, double kappa);

/// r = 4 lambda + kappa (sigma - 3 rho): the trace of the field equation.
inline double scalar_curvature_formula(double lambda, double kappa, const FluidParams& fp) {
  return 4.0 * lambda + kappa * (fp.sigma - 3.0 * fp.rho);
}

enum class Flag { False, True, Boundary };

struct EnergyConditions {
  Flag timelike_convergence = Flag::False;  // S(xi,xi) > 0
  double s_xi_xi = 0.0;
  Flag strong_energy = Flag::False;  // sigma + 3 rho > 0
  double sigma_plus_3rho = 0.0;
};

EnergyConditions energy_conditions(const FluidParams& fp, double s_xi_xi, double tol);

/// trace(Q^2) three ways: the direct trace, the intermediate a r + b S(xi,xi)
/// form, and the closed form in (lambda, kappa, sigma, rho); plus the two
/// routes to S(xi,xi).
struct RicciNormCheck {
  double trace_q2 = 0.0;
  double intermediate = 0.0;      // a r + b S(xi,xi)
  double closed_form = 0.0;       // 4l^2 + 2 l k (sigma - 3 rho) + k^2 (sigma^2 + 3 rho^2)
  double s_xi_xi_split = 0.0;     // b - a
  double s_xi_xi_formula = 0.0;   // -lambda + kappa (sigma + 3 rho)/2
};

RicciNormCheck ricci_norm_check(const Tensor& ricci_op, const QuasiEinstein& qe,
                                double lambda, double kappa, const FluidParams& fp);

}  // namespace riccilab::fluid
