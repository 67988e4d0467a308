#include "riccilab/fluid.hpp"

#include <cmath>

#include <fmt/core.h>

#include "riccilab/expression.hpp"

namespace riccilab::fluid {

using tensor::Valence;

namespace {

constexpr int kDim = tensor::kDim;

// eta_a = g_{ab} xi^b
Tensor lower(const MetricValue& m, const Tensor& xi) {
  Tensor eta(Valence{tensor::Variance::Down});
  for (int a = 0; a < kDim; ++a) {
    double s = 0.0;
    for (int b = 0; b < kDim; ++b) s += m.g.at({a, b}) * xi.at({b});
    eta.at({a}) = s;
  }
  return eta;
}

}  // namespace

QuasiEinstein decompose_quasi_einstein(const Tensor& ricci, const MetricValue& m,
                                       const Tensor& xi) {
  const Tensor eta = lower(m, xi);
  double norm = 0.0;
  for (int a = 0; a < kDim; ++a) norm += eta.at({a}) * xi.at({a});
  if (std::abs(norm + 1.0) > 1e-8)
    throw Error(fmt::format("xi is not unit timelike: g(xi,xi) = {:.12g}", norm));

  QuasiEinstein qe;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) qe.scalar_curv += m.g_inv.at({i, j}) * ricci.at({i, j});
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) qe.s_xi_xi += ricci.at({i, j}) * xi.at({i}) * xi.at({j});

  qe.a = (qe.scalar_curv + qe.s_xi_xi) / 3.0;
  qe.b = qe.s_xi_xi + qe.a;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      const double model = qe.a * m.g.at({i, j}) + qe.b * eta.at({i}) * eta.at({j});
      qe.fit_residual = std::max(qe.fit_residual, std::abs(ricci.at({i, j}) - model));
    }
  return qe;
}

FluidParams extract_fluid_params(const QuasiEinstein& qe, double lambda, double kappa) {
  if (kappa == 0.0) throw Error("fluid extraction requires kappa != 0");
  FluidParams fp;
  fp.sigma = (2.0 * (qe.a - lambda) + qe.b) / (2.0 * kappa);
  fp.rho = (qe.b - 2.0 * (qe.a - lambda)) / (2.0 * kappa);
  return fp;
}

Tensor energy_momentum(const MetricValue& m, const Tensor& eta, const FluidParams& fp) {
  Tensor t(Valence{tensor::Variance::Down, tensor::Variance::Down});
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      t.at({i, j}) = fp.rho * m.g.at({i, j}) + (fp.sigma + fp.rho) * eta.at({i}) * eta.at({j});
  return t;
}

Tensor einstein_residual(const Tensor& ricci, double scalar_curv, const MetricValue& m,
                         const Tensor& energy_momentum, double lambda, double kappa) {
  Tensor res(Valence{tensor::Variance::Down, tensor::Variance::Down});
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      res.at({i, j}) = ricci.at({i, j}) + (lambda - scalar_curv / 2.0) * m.g.at({i, j}) -
                       kappa * energy_momentum.at({i, j});
  return res;
}

namespace {

Flag grade(double value, double tol) {
  if (std::abs(value) <= tol) return Flag::Boundary;
  return value > 0.0 ? Flag::True : Flag::False;
}

}  // namespace

EnergyConditions energy_conditions(const FluidParams& fp, double s_xi_xi, double tol) {
  EnergyConditions ec;
  ec.s_xi_xi = s_xi_xi;
  ec.timelike_convergence = grade(s_xi_xi, tol);
  ec.sigma_plus_3rho = fp.sigma + 3.0 * fp.rho;
  ec.strong_energy = grade(ec.sigma_plus_3rho, tol);
  return ec;
}

RicciNormCheck ricci_norm_check(const Tensor& ricci_op, const QuasiEinstein& qe,
                                double lambda, double kappa, const FluidParams& fp) {
  RicciNormCheck rn;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) rn.trace_q2 += ricci_op.at({a, b}) * ricci_op.at({b, a});
  rn.intermediate = qe.a * qe.scalar_curv + qe.b * qe.s_xi_xi;
  rn.closed_form = 4.0 * lambda * lambda +
                   2.0 * lambda * kappa * (fp.sigma - 3.0 * fp.rho) +
                   kappa * kappa * (fp.sigma * fp.sigma + 3.0 * fp.rho * fp.rho);
  rn.s_xi_xi_split = qe.b - qe.a;
  rn.s_xi_xi_formula = -lambda + kappa * (fp.sigma + 3.0 * fp.rho) / 2.0;
  return rn;
}

}  // namespace riccilab::fluid
