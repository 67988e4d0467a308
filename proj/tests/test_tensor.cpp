#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "riccilab/tensor.hpp"

using namespace riccilab::tensor;
using riccilab::Error;

namespace {

MetricValue diag_metric(double a, double b, double c, double d) {
  return MetricValue::from_components({{{a, 0, 0, 0}, {0, b, 0, 0}, {0, 0, c, 0}, {0, 0, 0, d}}});
}

Tensor identity_ud() {
  Tensor id({Variance::Up, Variance::Down});
  for (int i = 0; i < 4; ++i) id(i, i) = 1.0;
  return id;
}

}  // namespace

TEST_CASE("indexing and flat layout") {
  Tensor t({Variance::Up, Variance::Down, Variance::Down});
  CHECK(t.rank() == 3);
  CHECK(t.size() == 64);
  t(1, 2, 3) = 7.0;
  CHECK(t.at({1, 2, 3}) == 7.0);
  CHECK(t.data()[t.flat(std::array{1, 2, 3})] == 7.0);
  auto idx = unflatten(t.flat(std::array{1, 2, 3}), 3);
  CHECK(idx[0] == 1);
  CHECK(idx[1] == 2);
  CHECK(idx[2] == 3);
  CHECK_THROWS_AS(t.at({1, 2}), Error);
  CHECK_THROWS_AS(t.at({1, 2, 4}), Error);
  CHECK_THROWS_AS(Tensor(Valence(7, Variance::Down)), Error);
}

TEST_CASE("arithmetic requires matching valence") {
  Tensor a({Variance::Down, Variance::Down});
  Tensor b({Variance::Down, Variance::Down});
  a(0, 1) = 2.0;
  b(0, 1) = 3.0;
  CHECK((a + b)(0, 1) == 5.0);
  CHECK((a - b)(0, 1) == -1.0);
  CHECK((2.0 * a)(0, 1) == 4.0);
  Tensor c({Variance::Up, Variance::Down});
  CHECK_THROWS_AS(a += c, Error);
}

TEST_CASE("trace of the identity is the dimension") {
  Tensor id = identity_ud();
  CHECK(contract(id, 0, 1).value() == 4.0);
}

TEST_CASE("contraction needs opposite variances") {
  Tensor s({Variance::Down, Variance::Down});
  CHECK_THROWS_AS(contract(s, 0, 1), Error);
  Tensor t({Variance::Up, Variance::Down});
  CHECK_THROWS_AS(contract(t, 0, 0), Error);
  CHECK_THROWS_AS(contract(t, 0, 2), Error);
}

TEST_CASE("tensor product layout") {
  Tensor u({Variance::Up});
  Tensor w({Variance::Down});
  for (int i = 0; i < 4; ++i) {
    u(i) = i + 1.0;
    w(i) = 10.0 * (i + 1.0);
  }
  Tensor p = tensor_product(u, w);
  REQUIRE(p.rank() == 2);
  CHECK(p.valence()[0] == Variance::Up);
  CHECK(p.valence()[1] == Variance::Down);
  CHECK(p(2, 3) == 3.0 * 40.0);
  // contracting the product gives the pairing u^a w_a
  CHECK(contract(p, 0, 1).value() == 1 * 10 + 2 * 20 + 3 * 30 + 4 * 40);
}

TEST_CASE("metric inverse, determinant, signature") {
  // an expanding-universe style metric at t = 0.3
  double s = std::exp(0.6);
  MetricValue m = diag_metric(-1.0, s, s, s);
  CHECK(m.det == doctest::Approx(-s * s * s).epsilon(1e-14));
  CHECK(m.g_inv(0, 0) == doctest::Approx(-1.0));
  CHECK(m.g_inv(1, 1) == doctest::Approx(1.0 / s).epsilon(1e-14));
  CHECK(m.lorentzian());
  CHECK(m.signature() == std::pair<int, int>{1, 3});

  // g^{ab} g_{bc} == delta^a_c
  Tensor prod = contract(tensor_product(m.g_inv, m.g), 1, 2);
  CHECK(max_abs(prod - identity_ud()) < 1e-14);

  MetricValue euclid = diag_metric(1, 1, 1, 1);
  CHECK_FALSE(euclid.lorentzian());
  CHECK(euclid.signature() == std::pair<int, int>{0, 4});

  // off-diagonal block: eigenvalues of [[-1, .3], [.3, 1]] straddle zero
  MetricValue skewed = MetricValue::from_components(
      {{{-1, 0.3, 0, 0}, {0.3, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 5}}});
  CHECK(skewed.lorentzian());
  CHECK(skewed.det == doctest::Approx(-10.9).epsilon(1e-14));

  CHECK_THROWS_AS(diag_metric(1, 1, 0, 1), Error);
}

TEST_CASE("Einstein-space algebra: S = 3 g reproduces the frozen invariants") {
  double s = std::exp(0.6);
  MetricValue m = diag_metric(-1.0, s, s, s);

  Tensor S = m.g;
  S *= 3.0;
  Tensor Q = raise_index(S, 0, m);  // Q^a_b = g^{ac} S_{cb} = 3 delta^a_b

  CHECK(max_abs(Q - 3.0 * identity_ud()) < 1e-13);
  CHECK(contract(Q, 0, 1).value() == doctest::Approx(12.0).epsilon(1e-14));  // scalar curvature
  // trace(Q^2) = S^{ab} S_{ab} = 36
  Tensor QQ = contract(tensor_product(Q, Q), 1, 2);
  CHECK(contract(QQ, 0, 1).value() == doctest::Approx(36.0).epsilon(1e-13));
  CHECK(metric_square_norm(S, m) == doctest::Approx(36.0).epsilon(1e-13));
  CHECK(metric_square_norm(m.g, m) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("unit timelike covector has square norm -1") {
  double s = std::exp(0.6);
  MetricValue m = diag_metric(-1.0, s, s, s);
  Tensor eta({Variance::Down});
  eta(0) = -1.0;  // eta_a = g_{ab} xi^b with xi = d/dt
  Tensor xi = raise_index(eta, 0, m);
  CHECK(xi(0) == doctest::Approx(1.0));
  CHECK(metric_square_norm(eta, m) == doctest::Approx(-1.0).epsilon(1e-14));
  // eta(xi) = -1
  CHECK(contract(tensor_product(eta, xi), 0, 1).value() == doctest::Approx(-1.0));
}

TEST_CASE("raise/lower round-trips at a non-trivial metric") {
  MetricValue m = diag_metric(-0.6, 1.0 / 0.6, 25.0, 18.75);
  Tensor t({Variance::Down, Variance::Down, Variance::Down});
  // deterministic but unstructured components
  for (std::size_t f = 0; f < t.size(); ++f)
    t.data()[f] = std::sin(0.1 * static_cast<double>(f) + 1.0);

  Tensor up = raise_index(t, 1, m);
  CHECK(up.valence()[1] == Variance::Up);
  Tensor back = lower_index(up, 1, m);
  CHECK(max_abs(back - t) < 1e-13);
  CHECK_THROWS_AS(raise_index(up, 1, m), Error);  // already Up

  // raising all slots then pairing equals the metric square norm
  Tensor all = t;
  for (int s = 0; s < 3; ++s) all = raise_index(all, s, m);
  double paired = 0.0;
  for (std::size_t f = 0; f < t.size(); ++f) paired += t.data()[f] * all.data()[f];
  CHECK(metric_square_norm(t, m) == doctest::Approx(paired).epsilon(1e-13));
}

TEST_CASE("antisymmetric against symmetric contracts to zero") {
  MetricValue m = diag_metric(-1.0, 2.0, 3.0, 4.0);
  Tensor A({Variance::Down, Variance::Down});
  Tensor S({Variance::Up, Variance::Up});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      A(i, j) = (i - j) * (1.0 + 0.1 * (i + j));
      S(i, j) = 1.0 + i * j;
    }
  Tensor once = contract(tensor_product(A, S), 1, 2);  // A_{a b} S^{b c}
  Tensor full = contract(once, 0, 1);                  // A_{a b} S^{b a}
  CHECK(std::abs(full.value()) < 1e-12);
  (void)m;
}
