#include "riccilab/structure.hpp"

#include <array>
#include <cmath>

#include <fmt/core.h>

#include "riccilab/random.hpp"

namespace riccilab::structure {

using expr::Evaluator;
using expr::Expression;
using fluid::QuasiEinstein;
using geom::Geometry;
using geom::XiFields;
using tensor::max_abs;
using tensor::MetricValue;
using tensor::Tensor;
using tensor::Valence;
using tensor::Variance;

namespace {

using Vec = std::array<double, 4>;

Vec to_vec(const Tensor& t) {
  return {t.at({0}), t.at({1}), t.at({2}), t.at({3})};
}

double pair_g(const Tensor& g, const Vec& x, const Vec& y) {
  double s = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) s += g.at({a, b}) * x[a] * y[b];
  return s;
}

double form(const Vec& eta, const Vec& x) {
  double s = 0.0;
  for (int a = 0; a < 4; ++a) s += eta[a] * x[a];
  return s;
}

// matrix {U,D} applied to a vector
Vec mat_vec(const Tensor& m, const Vec& x) {
  Vec out{};
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 4; ++j) out[k] += m.at({k, j}) * x[j];
  return out;
}

// [R(x,y)z]^l = R^l_{kij} z^k x^i y^j
Vec riem_apply(const Tensor& riem, const Vec& x, const Vec& y, const Vec& z) {
  Vec out{};
  for (int l = 0; l < 4; ++l)
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[l] += riem.at({l, k, i, j}) * z[k] * x[i] * y[j];
  return out;
}

// Numeric snapshot of everything the identity suites contract at one point.
struct Ctx {
  MetricValue m;
  Tensor riem;   // {U,D,D,D}
  Tensor r04;    // {D,D,D,D}
  Vec xi, eta;
  Tensor B;      // {U,D}: nabla_j xi^k
  Tensor d_eta;  // {D,D}: nabla_j eta_i at {i,j}
  Tensor dB;     // {U,D,D}: nabla_i nabla_j xi^k at {k,j,i}
  Tensor lie_g;  // {D,D}
  std::vector<Vec> Y;
  std::vector<Tensor> dY;  // {U,D}
};

Ctx snapshot(const Geometry& geo, const XiFields& xf, const std::vector<BasisField>& basis,
             const Point& p) {
  Evaluator ev(p);
  Ctx c{geo.metric_value(ev),
        geo.riemann().evaluate(ev),
        geo.riemann04().evaluate(ev),
        to_vec(xf.xi.evaluate(ev)),
        to_vec(xf.eta.evaluate(ev)),
        xf.nabla_xi.evaluate(ev),
        xf.nabla_eta.evaluate(ev),
        xf.nabla_nabla_xi.evaluate(ev),
        xf.lie_g.evaluate(ev),
        {},
        {}};
  for (const auto& b : basis) {
    c.Y.push_back(to_vec(b.v.evaluate(ev)));
    c.dY.push_back(b.nabla.evaluate(ev));
  }
  return c;
}

// g(R(X,xi)xi, W) = sum A2(a,i) W^a X^i
Tensor xi_xi_slice(const Tensor& r04, const Vec& xi) {
  Tensor a2(Valence{Variance::Down, Variance::Down});
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) s += r04.at({a, k, i, j}) * xi[k] * xi[j];
      a2.at({a, i}) = s;
    }
  return a2;
}

}  // namespace

std::vector<BasisField> make_basis(const Geometry& geo, const TensorField& xi,
                                   std::uint64_t seed) {
  std::vector<BasisField> out;
  for (int i = 0; i < 4; ++i) {
    TensorField v(Valence{Variance::Up});
    v(i) = Expression::number(1.0);
    out.push_back({"d_" + geo.coordinates()[i], v, geo.covariant_derivative(v)});
  }
  out.push_back({"xi", xi, geo.covariant_derivative(xi)});
  std::uint64_t s = seed;
  for (int k = 0; k < 2; ++k) {
    TensorField v(Valence{Variance::Up});
    for (int i = 0; i < 4; ++i) v(i) = Expression::number(rng::uniform(s, -1.0, 1.0));
    out.push_back({fmt::format("rand{}", k + 1), v, geo.covariant_derivative(v)});
  }
  return out;
}

TorseCheck torse_forming_check(const Geometry& geo, const XiFields& xf,
                               std::span<const Point> pts) {
  TorseCheck tc;
  bool first = true;
  for (const Point& p : pts) {
    Evaluator ev(p);
    MetricValue m = geo.metric_value(ev);
    Tensor b = xf.nabla_xi.evaluate(ev);
    Vec xi = to_vec(xf.xi.evaluate(ev));
    Vec eta = to_vec(xf.eta.evaluate(ev));

    double res = 0.0, bm = 0.0, mm = 0.0;
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) {
        const double model = (k == j ? 1.0 : 0.0) + xi[k] * eta[j];
        res = std::max(res, std::abs(b.at({k, j}) - model));
        bm += b.at({k, j}) * model;
        mm += model * model;
      }
    if (first || res > tc.residual) {
      tc.residual = res;
      tc.fitted_f = mm > 0.0 ? bm / mm : 0.0;
      first = false;
    }
    tc.unit_check = std::max(tc.unit_check, std::abs(pair_g(m.g, xi, xi) + 1.0));
  }
  return tc;
}

std::vector<IdentityResult> theorem_2_1_suite(const Geometry& geo, const XiFields& xf,
                                              const std::vector<BasisField>& basis,
                                              std::span<const Point> pts, double tol) {
  const bool applicable = torse_forming_check(geo, xf, pts).holds(tol);
  std::vector<IdentityResult> out = {
      {"(nabla_X eta)(Y) = g(X,Y) + eta(X)eta(Y)", "eq2.5", 0.0, applicable},
      {"eta(nabla_X xi) = 0 and nabla_xi xi = 0", "eq2.6", 0.0, applicable},
      {"R(X,Y)xi = eta(Y)X - eta(X)Y", "eq2.7", 0.0, applicable},
      {"R(X,xi)xi = -X - eta(X)xi", "eq2.8", 0.0, applicable},
      {"eta(R(X,Y)Z) = eta(X)g(Y,Z) - eta(Y)g(X,Z)", "eq2.9", 0.0, applicable},
      {"L_xi g = 2[g + eta(x)eta]", "eq2.10", 0.0, applicable},
  };
  const int nb = static_cast<int>(basis.size());

  for (const Point& p : pts) {
    Ctx c = snapshot(geo, xf, basis, p);

    // eta(R(X,Y)Z) = g(R(X,Y)Z, xi): pre-contract the W slot with xi
    Tensor rxi(Valence{Variance::Down, Variance::Down, Variance::Down});
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double s = 0.0;
          for (int w = 0; w < 4; ++w) s += c.r04.at({w, k, i, j}) * c.xi[w];
          rxi.at({k, i, j}) = s;
        }

    for (int a = 0; a < nb; ++a) {
      const Vec& x = c.Y[a];
      const double eta_x = form(c.eta, x);

      // eq2.6: both halves
      Vec bx = mat_vec(c.B, x);
      out[1].residual = std::max(out[1].residual, std::abs(form(c.eta, bx)));
      Vec bxi = mat_vec(c.B, c.xi);
      for (double v : bxi) out[1].residual = std::max(out[1].residual, std::abs(v));

      // eq2.8
      Vec r8 = riem_apply(c.riem, x, c.xi, c.xi);
      for (int l = 0; l < 4; ++l)
        out[3].residual =
            std::max(out[3].residual, std::abs(r8[l] + x[l] + eta_x * c.xi[l]));

      for (int bb = 0; bb < nb; ++bb) {
        const Vec& y = c.Y[bb];
        const double eta_y = form(c.eta, y);
        const double gxy = pair_g(c.m.g, x, y);

        // eq2.5
        double de = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) de += c.d_eta.at({i, j}) * y[i] * x[j];
        out[0].residual = std::max(out[0].residual, std::abs(de - gxy - eta_x * eta_y));

        // eq2.7
        Vec r7 = riem_apply(c.riem, x, y, c.xi);
        for (int l = 0; l < 4; ++l)
          out[2].residual =
              std::max(out[2].residual, std::abs(r7[l] - eta_y * x[l] + eta_x * y[l]));

        // eq2.10
        double lg = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) lg += c.lie_g.at({i, j}) * x[i] * y[j];
        out[5].residual =
            std::max(out[5].residual, std::abs(lg - 2.0 * gxy - 2.0 * eta_x * eta_y));

        // eq2.9
        for (int cc = 0; cc < nb; ++cc) {
          const Vec& z = c.Y[cc];
          double lhs = 0.0;
          for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
              for (int j = 0; j < 4; ++j) lhs += rxi.at({k, i, j}) * z[k] * x[i] * y[j];
          const double rhs = eta_x * pair_g(c.m.g, y, z) - eta_y * pair_g(c.m.g, x, z);
          out[4].residual = std::max(out[4].residual, std::abs(lhs - rhs));
        }
      }
    }
  }
  return out;
}

std::vector<IdentityResult> theorem_2_2_suite(const Geometry& geo, const XiFields& xf,
                                              const std::vector<BasisField>& basis,
                                              std::span<const Point> pts, double tol) {
  const bool applicable = torse_forming_check(geo, xf, pts).holds(tol);
  std::vector<IdentityResult> out = {
      {"g(nabla_X xi, nabla_Y xi) = -g(R(X,xi)xi, Y) = -g(R(xi,Y)X, xi)", "eq2.11", 0.0,
       applicable},
      {"2 g(R(X,xi)xi, Y) = g(R(X,xi)xi, nabla_Y xi) + g(R(Y,xi)xi, nabla_X xi)", "eq2.12",
       0.0, applicable},
      {"g(nabla_xi nabla_Y xi, nabla_X xi) + g(R(X,xi)xi, nabla_xi Y) = 0", "eq2.13", 0.0,
       applicable},
  };
  const int nb = static_cast<int>(basis.size());

  for (const Point& p : pts) {
    Ctx c = snapshot(geo, xf, basis, p);
    Tensor a2 = xi_xi_slice(c.r04, c.xi);  // g(R(X,xi)xi, W) = A2(w,i) W^w X^i

    // g(R(xi,Y)X, xi) = A3(k,j) X^k Y^j
    Tensor a3(Valence{Variance::Down, Variance::Down});
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) {
        double s = 0.0;
        for (int w = 0; w < 4; ++w)
          for (int i = 0; i < 4; ++i) s += c.r04.at({w, k, i, j}) * c.xi[w] * c.xi[i];
        a3.at({k, j}) = s;
      }

    auto a2_at = [&](const Vec& w, const Vec& x) {
      double s = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int i = 0; i < 4; ++i) s += a2.at({a, i}) * w[a] * x[i];
      return s;
    };

    for (int aa = 0; aa < nb; ++aa) {
      const Vec& x = c.Y[aa];
      Vec bx = mat_vec(c.B, x);
      for (int bb = 0; bb < nb; ++bb) {
        const Vec& y = c.Y[bb];
        Vec by = mat_vec(c.B, y);

        const double t1 = pair_g(c.m.g, bx, by);
        const double t2 = -a2_at(y, x);
        double a3_xy = 0.0;
        for (int k = 0; k < 4; ++k)
          for (int j = 0; j < 4; ++j) a3_xy += a3.at({k, j}) * x[k] * y[j];
        out[0].residual = std::max(out[0].residual,
                                   std::max(std::abs(t1 - t2), std::abs(t1 + a3_xy)));

        const double rhs = 0.5 * (a2_at(by, x) + a2_at(bx, y));
        out[1].residual = std::max(out[1].residual, std::abs(a2_at(y, x) - rhs));

        // nabla_xi nabla_Y xi, with Y an honest field: second derivatives of
        // xi plus the transport of Y itself
        Vec v1{};
        for (int k = 0; k < 4; ++k)
          for (int i = 0; i < 4; ++i) {
            double inner = 0.0;
            for (int j = 0; j < 4; ++j)
              inner += c.dB.at({k, j, i}) * y[j] + c.B.at({k, j}) * c.dY[bb].at({j, i});
            v1[k] += c.xi[i] * inner;
          }
        Vec v2{};  // nabla_xi Y
        for (int a = 0; a < 4; ++a)
          for (int i = 0; i < 4; ++i) v2[a] += c.dY[bb].at({a, i}) * c.xi[i];
        out[2].residual =
            std::max(out[2].residual, std::abs(pair_g(c.m.g, v1, bx) + a2_at(v2, x)));
      }
    }
  }
  return out;
}

ConformalFlatness conformal_flatness_check(const Geometry& geo, std::span<const Point> pts) {
  TensorField div_c = field::contract(geo.nabla_weyl(), 0, 4);
  ConformalFlatness cf;
  for (const Point& p : pts) {
    Evaluator ev(p);
    cf.max_weyl = std::max(cf.max_weyl, max_abs(geo.weyl().evaluate(ev)));
    cf.max_div_weyl = std::max(cf.max_div_weyl, max_abs(div_c.evaluate(ev)));
  }
  return cf;
}

namespace {

// constant-curvature basis tensor in R04 slot order {w,k,i,j}
Tensor curvature_model_g(const Tensor& g) {
  Tensor out(Valence{Variance::Down, Variance::Down, Variance::Down, Variance::Down});
  for (int w = 0; w < 4; ++w)
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          out.at({w, k, i, j}) = g.at({j, k}) * g.at({i, w}) - g.at({i, k}) * g.at({j, w});
  return out;
}

// the eta(x)eta block of the quasi-constant model, same slot order
Tensor curvature_model_eta(const Tensor& g, const Vec& eta) {
  Tensor out(Valence{Variance::Down, Variance::Down, Variance::Down, Variance::Down});
  for (int w = 0; w < 4; ++w)
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          out.at({w, k, i, j}) = g.at({i, w}) * eta[j] * eta[k] -
                                 g.at({i, k}) * eta[j] * eta[w] +
                                 g.at({j, k}) * eta[i] * eta[w] -
                                 g.at({j, w}) * eta[i] * eta[k];
  return out;
}

double inner(const Tensor& a, const Tensor& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * b.data()[i];
  return s;
}

}  // namespace

ConstantCurvatureFit constant_curvature_check(const Geometry& geo, const XiFields& xf,
                                              double lambda, double kappa,
                                              std::span<const Point> pts, double tol) {
  ConstantCurvatureFit fit;
  double max_weyl = 0.0;
  bool first = true;
  for (const Point& p : pts) {
    Evaluator ev(p);
    MetricValue m = geo.metric_value(ev);
    Tensor r04 = geo.riemann04().evaluate(ev);
    Tensor g1 = curvature_model_g(m.g);
    const double k0 = inner(r04, g1) / inner(g1, g1);

    double res = 0.0;
    for (std::size_t i = 0; i < r04.data().size(); ++i)
      res = std::max(res, std::abs(r04.data()[i] - k0 * g1.data()[i]));

    QuasiEinstein qe =
        fluid::decompose_quasi_einstein(geo.ricci().evaluate(ev), m, xf.xi.evaluate(ev));
    const double sigma = fluid::extract_fluid_params(qe, lambda, kappa).sigma;
    const double expected = (lambda + kappa * sigma) / 3.0;

    if (first || res > fit.fit_residual) {
      fit.kappa0 = k0;
      fit.fit_residual = res;
      fit.expected = expected;
      fit.b = qe.b;
      first = false;
    }
    fit.mismatch = std::max(fit.mismatch, std::abs(k0 - expected));
    max_weyl = std::max(max_weyl, max_abs(geo.weyl().evaluate(ev)));
  }
  fit.applicable = max_weyl <= tol;
  return fit;
}

QuasiConstantFit quasi_constant_fit(const Geometry& geo, const XiFields& xf,
                                    std::span<const Point> pts) {
  QuasiConstantFit fit;
  bool first = true;
  for (const Point& p : pts) {
    Evaluator ev(p);
    MetricValue m = geo.metric_value(ev);
    Tensor r04 = geo.riemann04().evaluate(ev);
    Vec eta = to_vec(xf.eta.evaluate(ev));
    Tensor g1 = curvature_model_g(m.g);
    Tensor g2 = curvature_model_eta(m.g, eta);

    const double a11 = inner(g1, g1), a12 = inner(g1, g2), a22 = inner(g2, g2);
    const double b1 = inner(r04, g1), b2 = inner(r04, g2);
    const double det = a11 * a22 - a12 * a12;
    double mv, nv;
    if (std::abs(det) > 1e-12 * a11 * a22) {
      mv = (b1 * a22 - b2 * a12) / det;
      nv = (b2 * a11 - b1 * a12) / det;
    } else {  // eta degenerate: fall back to the pure constant-curvature fit
      mv = b1 / a11;
      nv = 0.0;
    }

    double res = 0.0;
    for (std::size_t i = 0; i < r04.data().size(); ++i)
      res = std::max(res,
                     std::abs(r04.data()[i] - mv * g1.data()[i] - nv * g2.data()[i]));
    if (first || res > fit.fit_residual) {
      fit.m = mv;
      fit.n = nv;
      fit.fit_residual = res;
      first = false;
    }
  }
  return fit;
}

SemiSymmetry semi_symmetry_check(const Geometry& geo, std::span<const Point> pts) {
  TensorField rr = field::curvature_derivation(geo.riemann(), geo.riemann());
  TensorField rs = field::curvature_derivation(geo.riemann(), geo.ricci());
  SemiSymmetry ss;
  for (const Point& p : pts) {
    Evaluator ev(p);
    ss.r_dot_r = std::max(ss.r_dot_r, max_abs(rr.evaluate(ev)));
    ss.r_dot_s = std::max(ss.r_dot_s, max_abs(rs.evaluate(ev)));
  }
  return ss;
}

ParallelReport parallel_tensor_check(const Geometry& geo, const XiFields& xf,
                                     const TensorField& alpha, double lambda, double kappa,
                                     std::span<const Point> pts, double tol) {
  if (alpha.valence() != Valence{Variance::Down, Variance::Down})
    throw Error("parallel candidate must be a (0,2) field");
  TensorField nabla_alpha = geo.covariant_derivative(alpha);

  ParallelReport pr;
  bool first = true;
  for (const Point& p : pts) {
    Evaluator ev(p);
    Tensor a = alpha.evaluate(ev);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (std::abs(a.at({i, j}) - a.at({j, i})) > tol)
          throw Error("parallel candidate is not symmetric");

    pr.nabla_alpha = std::max(pr.nabla_alpha, max_abs(nabla_alpha.evaluate(ev)));

    MetricValue m = geo.metric_value(ev);
    Vec xi = to_vec(xf.xi.evaluate(ev));
    double axx = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) axx += a.at({i, j}) * xi[i] * xi[j];
    if (first) {
      pr.alpha_xi_xi = axx;
      pr.recovered_constant = -axx;
      first = false;
    }
    pr.alpha_xi_xi_spread = std::max(pr.alpha_xi_xi_spread, std::abs(axx - pr.alpha_xi_xi));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        pr.multiple_residual =
            std::max(pr.multiple_residual, std::abs(a.at({i, j}) + axx * m.g.at({i, j})));

    QuasiEinstein qe =
        fluid::decompose_quasi_einstein(geo.ricci().evaluate(ev), m, xf.xi.evaluate(ev));
    const double sigma = fluid::extract_fluid_params(qe, lambda, kappa).sigma;
    pr.lambda_branch_value = std::max(pr.lambda_branch_value, std::abs(lambda + kappa * sigma));
  }
  pr.parallel = pr.nabla_alpha <= tol;
  pr.dichotomy =
      pr.parallel && (pr.lambda_branch_value <= tol || pr.multiple_residual <= tol);
  return pr;
}

KillingReport killing_checks(const Geometry& geo, const XiFields& xf, const TensorField& v,
                             std::span<const Point> pts, double tol) {
  TensorField lie_g_v = geo.lie_along(v, geo.g());
  TensorField p_field = geo.lie_nabla(v);
  TensorField w = geo.covariant_derivative(v);
  TensorField dw = geo.covariant_derivative(w);

  KillingReport kr;
  for (const Point& pt : pts) {
    Evaluator ev(pt);
    kr.killing = std::max(kr.killing, max_abs(lie_g_v.evaluate(ev)));
    kr.affine = std::max(kr.affine, max_abs(p_field.evaluate(ev)));
    kr.xi_killing = std::max(kr.xi_killing, max_abs(xf.lie_g.evaluate(ev)));

    Tensor riem = geo.riemann().evaluate(ev);
    Tensor wv = w.evaluate(ev), dwv = dw.evaluate(ev);
    Tensor bv = xf.nabla_xi.evaluate(ev);
    Vec xi = to_vec(xf.xi.evaluate(ev));
    Vec vv = to_vec(v.evaluate(ev));

    // nabla_xi nabla_xi V + R(V,xi)xi
    Vec jac = riem_apply(riem, vv, xi, xi);
    for (int l = 0; l < 4; ++l)
      for (int i = 0; i < 4; ++i) {
        double inner_d = 0.0;
        for (int j = 0; j < 4; ++j)
          inner_d += dwv.at({l, j, i}) * xi[j] + wv.at({l, j}) * bv.at({j, i});
        jac[l] += xi[i] * inner_d;
      }
    for (double x : jac) kr.jacobi = std::max(kr.jacobi, std::abs(x));

    // xi-Killing consequences, reported whether or not L_xi g vanishes
    MetricValue m = geo.metric_value(ev);
    Tensor dq = geo.nabla_ricci_op().evaluate(ev);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double s = 0.0;
        for (int mm = 0; mm < 4; ++mm) s += dq.at({a, b, mm}) * xi[mm];
        kr.nabla_xi_q = std::max(kr.nabla_xi_q, std::abs(s));
      }
    QuasiEinstein qe =
        fluid::decompose_quasi_einstein(geo.ricci().evaluate(ev), m, xf.xi.evaluate(ev));
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += dq.at({a, k, i}) * xi[k];
        kr.nabla_q_xi = std::max(kr.nabla_q_xi, std::abs(s + qe.b * bv.at({a, i})));
      }
  }
  kr.implication_applicable = kr.affine <= tol;
  kr.implication_holds = !kr.implication_applicable || kr.jacobi <= tol;
  return kr;
}

}  // namespace riccilab::structure
