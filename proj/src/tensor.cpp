#include "riccilab/tensor.hpp"

#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

namespace riccilab::tensor {

namespace {

std::size_t pow4(int rank) { return std::size_t{1} << (2 * rank); }

}  // namespace

Tensor::Tensor(Valence valence) : valence_(std::move(valence)) {
  if (rank() > kMaxRank) throw Error(fmt::format("tensor rank {} exceeds the supported maximum {}", rank(), kMaxRank));
  data_.assign(pow4(rank()), 0.0);
}

std::size_t Tensor::flat(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank())
    throw Error(fmt::format("tensor of rank {} indexed with {} indices", rank(), idx.size()));
  std::size_t f = 0;
  for (int i : idx) {
    if (i < 0 || i >= kDim) throw Error(fmt::format("tensor index {} out of range", i));
    f = f * kDim + static_cast<std::size_t>(i);
  }
  return f;
}

double Tensor::value() const {
  if (rank() != 0) throw Error("value() requires a rank-0 tensor");
  return data_[0];
}

Tensor& Tensor::operator+=(const Tensor& other) {
  if (valence_ != other.valence_) throw Error("tensor addition requires identical valences");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
  if (valence_ != other.valence_) throw Error("tensor subtraction requires identical valences");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
Tensor operator*(double s, Tensor t) { return t *= s; }

std::array<int, kMaxRank> unflatten(std::size_t flat, int rank) {
  std::array<int, kMaxRank> idx{};
  for (int s = rank - 1; s >= 0; --s) {
    idx[static_cast<std::size_t>(s)] = static_cast<int>(flat % kDim);
    flat /= kDim;
  }
  return idx;
}

Tensor tensor_product(const Tensor& a, const Tensor& b) {
  Valence v = a.valence();
  v.insert(v.end(), b.valence().begin(), b.valence().end());
  Tensor out(std::move(v));
  auto od = out.data();
  auto ad = a.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < ad.size(); ++i)
    for (std::size_t j = 0; j < bd.size(); ++j) od[i * bd.size() + j] = ad[i] * bd[j];
  return out;
}

Tensor contract(const Tensor& t, int slot_a, int slot_b) {
  const int r = t.rank();
  if (slot_a > slot_b) std::swap(slot_a, slot_b);
  if (slot_a < 0 || slot_b >= r || slot_a == slot_b)
    throw Error(fmt::format("bad contraction slots ({}, {}) for rank {}", slot_a, slot_b, r));
  if (t.valence()[static_cast<std::size_t>(slot_a)] == t.valence()[static_cast<std::size_t>(slot_b)])
    throw Error("contraction requires one Up and one Down slot");

  Valence v;
  for (int s = 0; s < r; ++s)
    if (s != slot_a && s != slot_b) v.push_back(t.valence()[static_cast<std::size_t>(s)]);
  Tensor out(std::move(v));

  int src[kMaxRank] = {};
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto oi = unflatten(f, out.rank());
    int n = 0;
    for (int s = 0; s < r; ++s)
      if (s != slot_a && s != slot_b) src[s] = oi[static_cast<std::size_t>(n++)];
    double sum = 0.0;
    for (int k = 0; k < kDim; ++k) {
      src[slot_a] = k;
      src[slot_b] = k;
      sum += t.at(std::span<const int>(src, static_cast<std::size_t>(r)));
    }
    out.data()[f] = sum;
  }
  return out;
}

double max_abs(const Tensor& t) {
  double m = 0.0;
  for (double v : t.data()) m = std::max(m, std::abs(v));
  return m;
}

// ---------------------------------------------------------------------------
// MetricValue
// ---------------------------------------------------------------------------

namespace {

// 3x3 determinant of the submatrix of c skipping row `si` and column `sj`.
double minor3(const std::array<std::array<double, 4>, 4>& c, int si, int sj) {
  double sub[3][3];
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
  return sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1]) -
         sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0]) +
         sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0]);
}

}  // namespace

MetricValue MetricValue::from_components(const std::array<std::array<double, 4>, 4>& c) {
  MetricValue m;
  m.g = Tensor({Variance::Down, Variance::Down});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.g(i, j) = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

  double det = 0.0;
  for (int j = 0; j < 4; ++j) {
    double cof = ((j % 2 == 0) ? 1.0 : -1.0) * minor3(c, 0, j);
    det += c[0][static_cast<std::size_t>(j)] * cof;
  }
  m.det = det;

  double scale = 0.0;
  for (const auto& row : c)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (std::abs(det) <= 1e-12 * std::max(1.0, scale * scale * scale * scale))
    throw Error(fmt::format("metric is singular (det = {})", det));

  // inverse = adjugate / det; adj_{ij} = cofactor_{ji}
  m.g_inv = Tensor({Variance::Up, Variance::Up});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double cof = (((i + j) % 2 == 0) ? 1.0 : -1.0) * minor3(c, j, i);
      m.g_inv(i, j) = cof / det;
    }
  return m;
}

std::pair<int, int> MetricValue::signature() const {
  // Cyclic Jacobi on a copy of the (symmetric) component matrix.
  double a[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] = 0.5 * (g(i, j) + g(j, i));

  for (int sweep = 0; sweep < 32; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-28) break;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double cth = 1.0 / std::sqrt(t * t + 1.0);
        double sth = t * cth;
        for (int k = 0; k < 4; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = cth * akp - sth * akq;
          a[k][q] = sth * akp + cth * akq;
        }
        for (int k = 0; k < 4; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = cth * apk - sth * aqk;
          a[q][k] = sth * apk + cth * aqk;
        }
      }
  }

  int neg = 0, pos = 0;
  for (int i = 0; i < 4; ++i) (a[i][i] < 0.0 ? neg : pos)++;
  return {neg, pos};
}

namespace {

Tensor flip_slot(const Tensor& t, int slot, const Tensor& metric2, Variance from) {
  const int r = t.rank();
  if (slot < 0 || slot >= r) throw Error(fmt::format("bad slot {} for rank {}", slot, r));
  if (t.valence()[static_cast<std::size_t>(slot)] != from)
    throw Error("slot already has the requested variance");

  Valence v = t.valence();
  v[static_cast<std::size_t>(slot)] = from == Variance::Down ? Variance::Up : Variance::Down;
  Tensor out(std::move(v));

  int src[kMaxRank] = {};
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto oi = unflatten(f, r);
    for (int s = 0; s < r; ++s) src[s] = oi[static_cast<std::size_t>(s)];
    double sum = 0.0;
    for (int k = 0; k < kDim; ++k) {
      src[slot] = k;
      sum += metric2.at({oi[static_cast<std::size_t>(slot)], k}) *
             t.at(std::span<const int>(src, static_cast<std::size_t>(r)));
    }
    out.data()[f] = sum;
  }
  return out;
}

}  // namespace

Tensor raise_index(const Tensor& t, int slot, const MetricValue& m) {
  return flip_slot(t, slot, m.g_inv, Variance::Down);
}

Tensor lower_index(const Tensor& t, int slot, const MetricValue& m) {
  return flip_slot(t, slot, m.g, Variance::Up);
}

double metric_square_norm(const Tensor& t, const MetricValue& m) {
  Tensor flip = t;
  for (int s = 0; s < t.rank(); ++s)
    flip = flip.valence()[static_cast<std::size_t>(s)] == Variance::Down ? raise_index(flip, s, m)
                                                                         : lower_index(flip, s, m);
  double sum = 0.0;
  auto a = t.data();
  auto b = flip.data();
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace riccilab::tensor
