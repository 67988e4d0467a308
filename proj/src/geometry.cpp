#include "riccilab/geometry.hpp"

#include <fmt/format.h>

namespace riccilab::geom {

namespace {

using E = Expression;

// 3x3 determinant of the metric component matrix with row `si` and column
// `sj` removed. Structural zeros fold away, so diagonal metrics stay small.
Expression minor3(const MetricComponents& c, int si, int sj) {
  Expression sub[3][3];
  int r = 0;
  for (int i = 0; i < 4; ++i) {
    if (i == si) continue;
    int cc = 0;
    for (int j = 0; j < 4; ++j) {
      if (j == sj) continue;
      sub[r][cc++] = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    ++r;
  }
  auto det2 = [](const E& a, const E& b, const E& c2, const E& d) {
    return E::sub(E::mul(a, d), E::mul(b, c2));
  };
  return E::add(E::sub(E::mul(sub[0][0], det2(sub[1][1], sub[1][2], sub[2][1], sub[2][2])),
                       E::mul(sub[0][1], det2(sub[1][0], sub[1][2], sub[2][0], sub[2][2]))),
                E::mul(sub[0][2], det2(sub[1][0], sub[1][1], sub[2][0], sub[2][1])));
}

}  // namespace

Geometry Geometry::build(const MetricComponents& metric, std::vector<std::string> coordinates) {
  Geometry geo;
  geo.coordinates_ = std::move(coordinates);

  geo.g_ = TensorField({Variance::Down, Variance::Down});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      geo.g_(i, j) = metric[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

  Expression det = E::number(0.0);
  for (int j = 0; j < 4; ++j) {
    Expression cof = minor3(metric, 0, j);
    if (j % 2 == 1) cof = E::unary_minus(cof);
    det = E::add(det, E::mul(metric[0][static_cast<std::size_t>(j)], cof));
  }
  geo.det_g_ = det;

  // inverse through the adjugate; entries share the single det node
  geo.g_inv_ = TensorField({Variance::Up, Variance::Up});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Expression cof = minor3(metric, j, i);
      if ((i + j) % 2 == 1) cof = E::unary_minus(cof);
      geo.g_inv_(i, j) = E::div(cof, det);
    }

  // gamma^k_{ij}, symmetric in (i, j)
  TensorField dg = field::partial_derivative(geo.g_);  // d_c g_{ij} at {i, j, c}
  geo.gamma_ = TensorField({Variance::Up, Variance::Down, Variance::Down});
  Expression half = E::number(0.5);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        Expression sum = E::number(0.0);
        for (int l = 0; l < 4; ++l) {
          const Expression& gkl = geo.g_inv_(k, l);
          if (gkl.is_zero()) continue;
          Expression bracket =
              E::sub(E::add(dg(j, l, i), dg(i, l, j)), dg(i, j, l));
          sum = E::add(sum, E::mul(gkl, bracket));
        }
        Expression gij = E::mul(half, sum);
        geo.gamma_(k, i, j) = gij;
        geo.gamma_(k, j, i) = gij;
      }

  // R^l_{kij}, antisymmetric in (i, j)
  TensorField dgamma = field::partial_derivative(geo.gamma_);  // d_m gamma^l_{jk} at {l, j, k, m}
  geo.riemann_ = TensorField({Variance::Up, Variance::Down, Variance::Down, Variance::Down});
  for (int l = 0; l < 4; ++l)
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          Expression sum = E::sub(dgamma(l, j, k, i), dgamma(l, i, k, j));
          for (int m = 0; m < 4; ++m)
            sum = E::add(sum, E::sub(E::mul(geo.gamma_(l, i, m), geo.gamma_(m, j, k)),
                                     E::mul(geo.gamma_(l, j, m), geo.gamma_(m, i, k))));
          geo.riemann_(l, k, i, j) = sum;
          geo.riemann_(l, k, j, i) = E::unary_minus(sum);
        }

  geo.ricci_ = field::contract(geo.riemann_, 0, 2);  // S_{kj} = R^i_{kij}

  Expression r = E::number(0.0);
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 4; ++j) {
      if (geo.g_inv_(k, j).is_zero() || geo.ricci_(k, j).is_zero()) continue;
      r = E::add(r, E::mul(geo.g_inv_(k, j), geo.ricci_(k, j)));
    }
  geo.scalar_curv_ = r;

  geo.ricci_op_ = geo.raise_slot(geo.ricci_, 0);  // Q^a_b = g^{ac} S_{cb}
  geo.riemann04_ = geo.lower_slot(geo.riemann_, 0);

  // Weyl conformal curvature
  geo.weyl_ = TensorField({Variance::Up, Variance::Down, Variance::Down, Variance::Down});
  Expression r6 = E::div(r, E::number(6.0));
  for (int l = 0; l < 4; ++l)
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          Expression mid = E::number(0.0);
          if (l == i) mid = E::add(mid, geo.ricci_(j, k));
          if (l == j) mid = E::sub(mid, geo.ricci_(i, k));
          mid = E::add(mid, E::mul(geo.g_(j, k), geo.ricci_op_(l, i)));
          mid = E::sub(mid, E::mul(geo.g_(i, k), geo.ricci_op_(l, j)));
          Expression last = E::number(0.0);
          if (l == i) last = E::add(last, geo.g_(j, k));
          if (l == j) last = E::sub(last, geo.g_(i, k));
          geo.weyl_(l, k, i, j) = E::add(
              E::sub(geo.riemann_(l, k, i, j), E::mul(half, mid)), E::mul(r6, last));
        }

  return geo;
}

const TensorField& Geometry::nabla_riemann() const {
  if (!nabla_riemann_) nabla_riemann_ = covariant_derivative(riemann_);
  return *nabla_riemann_;
}

const TensorField& Geometry::nabla_ricci() const {
  if (!nabla_ricci_) nabla_ricci_ = covariant_derivative(ricci_);
  return *nabla_ricci_;
}

const TensorField& Geometry::nabla_weyl() const {
  if (!nabla_weyl_) nabla_weyl_ = covariant_derivative(weyl_);
  return *nabla_weyl_;
}

const TensorField& Geometry::nabla_ricci_op() const {
  if (!nabla_ricci_op_) nabla_ricci_op_ = covariant_derivative(ricci_op_);
  return *nabla_ricci_op_;
}

TensorField Geometry::covariant_derivative(const TensorField& t) const {
  return field::covariant_derivative(t, gamma_);
}

TensorField Geometry::lie_along(const TensorField& v, const TensorField& t) const {
  return field::lie_derivative(t, v);
}

TensorField Geometry::lie_nabla(const TensorField& v) const {
  if (v.valence() != Valence{Variance::Up})
    throw Error("lie_nabla expects a vector field");
  TensorField ddv = covariant_derivative(covariant_derivative(v));  // {l, j; i}
  TensorField p({Variance::Up, Variance::Down, Variance::Down});
  for (int l = 0; l < 4; ++l)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Expression s = ddv(l, j, i);
        for (int m = 0; m < 4; ++m) {
          if (riemann_(l, j, m, i).is_zero() || v(m).is_zero()) continue;
          s = E::add(s, E::mul(riemann_(l, j, m, i), v(m)));
        }
        p(l, i, j) = s;
      }
  return p;
}

namespace {

TensorField flip_slot(const TensorField& t, int slot, const TensorField& metric2, Variance from) {
  const int r = t.rank();
  if (slot < 0 || slot >= r) throw Error(fmt::format("bad slot {} for rank {}", slot, r));
  if (t.valence()[static_cast<std::size_t>(slot)] != from)
    throw Error("slot already has the requested variance");

  Valence v = t.valence();
  v[static_cast<std::size_t>(slot)] = from == Variance::Down ? Variance::Up : Variance::Down;
  TensorField out(std::move(v));

  int src[tensor::kMaxRank] = {};
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto oi = tensor::unflatten(f, r);
    for (int s = 0; s < r; ++s) src[s] = oi[static_cast<std::size_t>(s)];
    Expression sum = E::number(0.0);
    for (int k = 0; k < 4; ++k) {
      const Expression& mk = metric2.at({oi[static_cast<std::size_t>(slot)], k});
      if (mk.is_zero()) continue;
      src[slot] = k;
      sum = E::add(sum, E::mul(mk, t.at(std::span<const int>(src, static_cast<std::size_t>(r)))));
    }
    out.components()[f] = sum;
  }
  return out;
}

}  // namespace

TensorField Geometry::raise_slot(const TensorField& t, int slot) const {
  return flip_slot(t, slot, g_inv_, Variance::Down);
}

TensorField Geometry::lower_slot(const TensorField& t, int slot) const {
  return flip_slot(t, slot, g_, Variance::Up);
}

MetricValue Geometry::metric_value(Evaluator& ev) const {
  std::array<std::array<double, 4>, 4> c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ev(g_(i, j));
  return MetricValue::from_components(c);
}

XiFields make_xi_fields(const Geometry& geo, const std::array<Expression, 4>& xi_components) {
  XiFields f;
  f.xi = TensorField({Variance::Up});
  for (int i = 0; i < 4; ++i) f.xi(i) = xi_components[static_cast<std::size_t>(i)];
  f.eta = geo.lower_slot(f.xi, 0);
  f.nabla_xi = geo.covariant_derivative(f.xi);
  f.nabla_eta = geo.covariant_derivative(f.eta);
  f.nabla_nabla_xi = geo.covariant_derivative(f.nabla_xi);
  f.lie_g = field::lie_derivative(geo.g(), f.xi);
  return f;
}

}  // namespace riccilab::geom
