#include "riccilab/field.hpp"

#include <fmt/format.h>

#include "riccilab/expression.hpp"

namespace riccilab::field {

using expr::differentiate;
using tensor::unflatten;

TensorField::TensorField(Valence valence) : valence_(std::move(valence)) {
  if (rank() > kMaxRank)
    throw Error(fmt::format("tensor field rank {} exceeds the supported maximum {}", rank(), kMaxRank));
  comps_.assign(std::size_t{1} << (2 * rank()), Expression::number(0.0));
}

std::size_t TensorField::flat(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank())
    throw Error(fmt::format("tensor field of rank {} indexed with {} indices", rank(), idx.size()));
  std::size_t f = 0;
  for (int i : idx) {
    if (i < 0 || i >= kDim) throw Error(fmt::format("tensor field index {} out of range", i));
    f = f * kDim + static_cast<std::size_t>(i);
  }
  return f;
}

Tensor TensorField::evaluate(Evaluator& ev) const {
  Tensor out(valence_);
  for (std::size_t f = 0; f < comps_.size(); ++f) out.data()[f] = ev(comps_[f]);
  return out;
}

const Expression& TensorField::scalar() const {
  if (rank() != 0) throw Error("scalar() requires a rank-0 field");
  return comps_[0];
}

TensorField operator+(const TensorField& a, const TensorField& b) {
  if (a.valence() != b.valence()) throw Error("field addition requires identical valences");
  TensorField out(a.valence());
  for (std::size_t f = 0; f < out.size(); ++f)
    out.components()[f] = Expression::add(a.components()[f], b.components()[f]);
  return out;
}

TensorField operator-(const TensorField& a, const TensorField& b) {
  if (a.valence() != b.valence()) throw Error("field subtraction requires identical valences");
  TensorField out(a.valence());
  for (std::size_t f = 0; f < out.size(); ++f)
    out.components()[f] = Expression::sub(a.components()[f], b.components()[f]);
  return out;
}

TensorField scale(const Expression& s, const TensorField& t) {
  TensorField out(t.valence());
  for (std::size_t f = 0; f < out.size(); ++f)
    out.components()[f] = Expression::mul(s, t.components()[f]);
  return out;
}

TensorField tensor_product(const TensorField& a, const TensorField& b) {
  Valence v = a.valence();
  v.insert(v.end(), b.valence().begin(), b.valence().end());
  TensorField out(std::move(v));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out.components()[i * b.size() + j] = Expression::mul(a.components()[i], b.components()[j]);
  return out;
}

TensorField contract(const TensorField& t, int slot_a, int slot_b) {
  const int r = t.rank();
  if (slot_a > slot_b) std::swap(slot_a, slot_b);
  if (slot_a < 0 || slot_b >= r || slot_a == slot_b)
    throw Error(fmt::format("bad contraction slots ({}, {}) for rank {}", slot_a, slot_b, r));
  if (t.valence()[static_cast<std::size_t>(slot_a)] == t.valence()[static_cast<std::size_t>(slot_b)])
    throw Error("contraction requires one Up and one Down slot");

  Valence v;
  for (int s = 0; s < r; ++s)
    if (s != slot_a && s != slot_b) v.push_back(t.valence()[static_cast<std::size_t>(s)]);
  TensorField out(std::move(v));

  int src[kMaxRank] = {};
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto oi = unflatten(f, out.rank());
    int n = 0;
    for (int s = 0; s < r; ++s)
      if (s != slot_a && s != slot_b) src[s] = oi[static_cast<std::size_t>(n++)];
    Expression sum = Expression::number(0.0);
    for (int k = 0; k < kDim; ++k) {
      src[slot_a] = k;
      src[slot_b] = k;
      sum = Expression::add(sum, t.at(std::span<const int>(src, static_cast<std::size_t>(r))));
    }
    out.components()[f] = sum;
  }
  return out;
}

TensorField partial_derivative(const TensorField& t) {
  Valence v = t.valence();
  v.push_back(Variance::Down);
  TensorField out(std::move(v));
  int idx[kMaxRank] = {};
  const int r = t.rank();
  for (std::size_t f = 0; f < t.size(); ++f) {
    auto ti = unflatten(f, r);
    for (int s = 0; s < r; ++s) idx[s] = ti[static_cast<std::size_t>(s)];
    for (int c = 0; c < kDim; ++c) {
      idx[r] = c;
      out.at(std::span<const int>(idx, static_cast<std::size_t>(r + 1))) =
          differentiate(t.components()[f], c);
    }
  }
  return out;
}

TensorField covariant_derivative(const TensorField& t, const TensorField& gamma) {
  TensorField out = partial_derivative(t);
  const int r = t.rank();
  int idx[kMaxRank] = {};
  int src[kMaxRank] = {};
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto oi = unflatten(f, r + 1);
    for (int s = 0; s <= r; ++s) idx[s] = oi[static_cast<std::size_t>(s)];
    const int c = idx[r];  // derivative direction
    Expression sum = out.components()[f];
    for (int slot = 0; slot < r; ++slot) {
      const int a = idx[slot];
      for (int s = 0; s < r; ++s) src[s] = idx[s];
      for (int mm = 0; mm < kDim; ++mm) {
        src[slot] = mm;
        const Expression& tv = t.at(std::span<const int>(src, static_cast<std::size_t>(r)));
        if (tv.is_zero()) continue;
        if (t.valence()[static_cast<std::size_t>(slot)] == Variance::Up)
          sum = Expression::add(sum, Expression::mul(gamma.at({a, c, mm}), tv));
        else
          sum = Expression::sub(sum, Expression::mul(gamma.at({mm, c, a}), tv));
      }
    }
    out.components()[f] = sum;
  }
  return out;
}

TensorField lie_derivative(const TensorField& t, const TensorField& v) {
  if (v.valence() != Valence{Variance::Up})
    throw Error("lie_derivative expects a vector field (valence {Up})");
  const int r = t.rank();
  TensorField out(t.valence());
  int src[kMaxRank] = {};
  for (std::size_t f = 0; f < t.size(); ++f) {
    auto ti = unflatten(f, r);
    // transport term v^m d_m T
    Expression sum = Expression::number(0.0);
    for (int mm = 0; mm < kDim; ++mm)
      sum = Expression::add(sum, Expression::mul(v.at({mm}), differentiate(t.components()[f], mm)));
    // slot corrections
    for (int slot = 0; slot < r; ++slot) {
      const int a = ti[static_cast<std::size_t>(slot)];
      for (int s = 0; s < r; ++s) src[s] = ti[static_cast<std::size_t>(s)];
      for (int mm = 0; mm < kDim; ++mm) {
        src[slot] = mm;
        const Expression& tv = t.at(std::span<const int>(src, static_cast<std::size_t>(r)));
        if (tv.is_zero()) continue;
        if (t.valence()[static_cast<std::size_t>(slot)] == Variance::Up)
          sum = Expression::sub(sum, Expression::mul(differentiate(v.at({a}), mm), tv));
        else
          sum = Expression::add(sum, Expression::mul(differentiate(v.at({mm}), a), tv));
      }
    }
    out.components()[f] = sum;
  }
  return out;
}

TensorField curvature_derivation(const TensorField& riemann, const TensorField& t) {
  const int r = t.rank();
  Valence v = t.valence();
  v.push_back(Variance::Down);
  v.push_back(Variance::Down);
  TensorField out(std::move(v));
  int idx[kMaxRank] = {};
  int src[kMaxRank] = {};
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto oi = unflatten(f, r + 2);
    for (int s = 0; s < r + 2; ++s) idx[s] = oi[static_cast<std::size_t>(s)];
    const int i = idx[r];
    const int j = idx[r + 1];
    Expression sum = Expression::number(0.0);
    for (int slot = 0; slot < r; ++slot) {
      const int a = idx[slot];
      for (int s = 0; s < r; ++s) src[s] = idx[s];
      for (int mm = 0; mm < kDim; ++mm) {
        src[slot] = mm;
        const Expression& tv = t.at(std::span<const int>(src, static_cast<std::size_t>(r)));
        if (tv.is_zero()) continue;
        if (t.valence()[static_cast<std::size_t>(slot)] == Variance::Up)
          sum = Expression::add(sum, Expression::mul(riemann.at({a, mm, i, j}), tv));
        else
          sum = Expression::sub(sum, Expression::mul(riemann.at({mm, a, i, j}), tv));
      }
    }
    out.components()[f] = sum;
  }
  return out;
}

}  // namespace riccilab::field
