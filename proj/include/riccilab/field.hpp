#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "riccilab/expression.hpp"
#include "riccilab/tensor.hpp"

namespace riccilab::field {

using expr::Evaluator;
using expr::Expression;
using tensor::kDim;
using tensor::kMaxRank;
using tensor::Tensor;
using tensor::Valence;
using tensor::Variance;

/// Tensor with symbolic components, same slot layout as tensor::Tensor.
/// Fields are built once per scenario through the folding Expression builders
/// and then evaluated at many points; shared sub-DAGs (metric inverse,
/// Christoffel symbols) make per-point evaluation cheap with one Evaluator.
class TensorField {
 public:
  TensorField() : TensorField(Valence{}) {}
  explicit TensorField(Valence valence);

  int rank() const { return static_cast<int>(valence_.size()); }
  const Valence& valence() const { return valence_; }
  std::size_t size() const { return comps_.size(); }

  Expression& at(std::span<const int> idx) { return comps_[flat(idx)]; }
  const Expression& at(std::span<const int> idx) const { return comps_[flat(idx)]; }
  Expression& at(std::initializer_list<int> idx) { return at(std::span<const int>(idx.begin(), idx.size())); }
  const Expression& at(std::initializer_list<int> idx) const { return at(std::span<const int>(idx.begin(), idx.size())); }

  template <class... Is>
  Expression& operator()(Is... is) {
    const int idx[] = {static_cast<int>(is)...};
    return at(std::span<const int>(idx, sizeof...(Is)));
  }
  template <class... Is>
  const Expression& operator()(Is... is) const {
    const int idx[] = {static_cast<int>(is)...};
    return at(std::span<const int>(idx, sizeof...(Is)));
  }

  std::span<Expression> components() { return comps_; }
  std::span<const Expression> components() const { return comps_; }

  /// Numeric components at the evaluator's point.
  Tensor evaluate(Evaluator& ev) const;

  /// The value of a rank-0 field.
  const Expression& scalar() const;

 private:
  std::size_t flat(std::span<const int> idx) const;

  Valence valence_;
  std::vector<Expression> comps_;
};

TensorField operator+(const TensorField& a, const TensorField& b);
TensorField operator-(const TensorField& a, const TensorField& b);
TensorField scale(const Expression& s, const TensorField& t);

TensorField tensor_product(const TensorField& a, const TensorField& b);
TensorField contract(const TensorField& t, int slot_a, int slot_b);

/// Componentwise coordinate derivative, new Down slot appended last.
TensorField partial_derivative(const TensorField& t);

/// Covariant derivative with connection coefficients gamma^k_{ij} (valence
/// {Up, Down, Down}); the new Down (direction) slot is appended last.
TensorField covariant_derivative(const TensorField& t, const TensorField& gamma);

/// Lie derivative along the vector field v (valence {Up}); same valence as t.
TensorField lie_derivative(const TensorField& t, const TensorField& v);

/// Curvature operator acting as a derivation, (R(d_i, d_j) . T): each Up slot
/// contributes +R^a_{m i j} T[slot -> m], each Down slot -R^m_{a i j}
/// T[slot -> m]. Two Down slots (i, j) are appended last. `riemann` has
/// valence {Up, Down, Down, Down} with [R(X,Y)Z]^l = R^l_{kij} Z^k X^i Y^j.
TensorField curvature_derivation(const TensorField& riemann, const TensorField& t);

}  // namespace riccilab::field
