#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "riccilab/field.hpp"

namespace riccilab::geom {

using expr::Evaluator;
using expr::Expression;
using field::TensorField;
using tensor::MetricValue;
using tensor::Valence;
using tensor::Variance;

using MetricComponents = std::array<std::array<Expression, 4>, 4>;

/// All metric-derived symbolic fields of a chart. Index conventions:
///   gamma^k_{ij} = (1/2) g^{kl} (d_i g_{jl} + d_j g_{il} - d_l g_{ij})
///   R^l_{kij}    = d_i gamma^l_{jk} - d_j gamma^l_{ik}
///                  + gamma^l_{im} gamma^m_{jk} - gamma^l_{jm} gamma^m_{ik}
///   [R(X,Y)Z]^l  = R^l_{kij} Z^k X^i Y^j
///   S_{kj}       = R^i_{kij}        (so an Einstein factor is +3 on the
///                                    unit expanding-universe chart)
///   C^l_{kij}    = R^l_{kij} - (1/2)[S_{jk} d^l_i - S_{ik} d^l_j
///                  + g_{jk} Q^l_i - g_{ik} Q^l_j]
///                  + (r/6)[g_{jk} d^l_i - g_{ik} d^l_j]
/// Covariant derivatives append the direction slot last.
class Geometry {
 public:
  static Geometry build(const MetricComponents& metric, std::vector<std::string> coordinates);

  const std::vector<std::string>& coordinates() const { return coordinates_; }
  const TensorField& g() const { return g_; }
  const TensorField& g_inv() const { return g_inv_; }
  const Expression& det_g() const { return det_g_; }
  const TensorField& gamma() const { return gamma_; }
  const TensorField& riemann() const { return riemann_; }      // R^l_{kij}
  const TensorField& riemann04() const { return riemann04_; }  // R_{wkij} = g_{wl} R^l_{kij}
  const TensorField& ricci() const { return ricci_; }          // S_{kj}
  const Expression& scalar_curvature() const { return scalar_curv_; }
  const TensorField& ricci_op() const { return ricci_op_; }    // Q^a_b
  const TensorField& weyl() const { return weyl_; }            // C^l_{kij}

  // built on first use
  const TensorField& nabla_riemann() const;   // {U,D,D,D,D}, direction last
  const TensorField& nabla_ricci() const;     // {D,D,D}
  const TensorField& nabla_weyl() const;      // {U,D,D,D,D}
  const TensorField& nabla_ricci_op() const;  // {U,D,D}

  TensorField covariant_derivative(const TensorField& t) const;
  TensorField lie_along(const TensorField& v, const TensorField& t) const;
  /// (L_v nabla)^l_{ij} = (nabla^2 v)^l_{ji} + R^l_{jmi} v^m; symmetric in
  /// (i,j) because the connection is torsion-free.
  TensorField lie_nabla(const TensorField& v) const;
  TensorField raise_slot(const TensorField& t, int slot) const;
  TensorField lower_slot(const TensorField& t, int slot) const;

  /// Numeric metric bundle at the evaluator's point.
  MetricValue metric_value(Evaluator& ev) const;

 private:
  Geometry() = default;

  std::vector<std::string> coordinates_;
  TensorField g_, g_inv_;
  Expression det_g_;
  TensorField gamma_, riemann_, riemann04_, ricci_, ricci_op_, weyl_;
  Expression scalar_curv_;
  mutable std::optional<TensorField> nabla_riemann_, nabla_ricci_, nabla_weyl_, nabla_ricci_op_;
};

/// The symbolic fields attached to a declared reference vector field xi.
struct XiFields {
  TensorField xi;              // {Up}
  TensorField eta;             // {Down}, eta_a = g_{ab} xi^b
  TensorField nabla_xi;        // {Up, Down}: (nabla xi)^k_j = nabla_j xi^k
  TensorField nabla_eta;       // {Down, Down}: nabla_j eta_i at {i, j}
  TensorField nabla_nabla_xi;  // {Up, Down, Down}: nabla_i (nabla_j xi^k) at {k, j, i}
  TensorField lie_g;           // (L_xi g)_{ij}
};

XiFields make_xi_fields(const Geometry& geo, const std::array<Expression, 4>& xi_components);

}  // namespace riccilab::geom
