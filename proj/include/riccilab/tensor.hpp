#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "riccilab/expression.hpp"

namespace riccilab::tensor {

inline constexpr int kDim = 4;
inline constexpr int kMaxRank = 6;

enum class Variance : unsigned char { Up, Down };

/// Slot variances in slot order, e.g. {Up, Down, Down, Down} for R^l_{kij}.
using Valence = std::vector<Variance>;

/// Dense numeric tensor over a 4-dimensional space, rank <= 6. Components are
/// stored row-major with the first slot slowest.
class Tensor {
 public:
  Tensor() : Tensor(Valence{}) {}
  explicit Tensor(Valence valence);

  int rank() const { return static_cast<int>(valence_.size()); }
  const Valence& valence() const { return valence_; }
  std::size_t size() const { return data_.size(); }

  double& at(std::span<const int> idx) { return data_[flat(idx)]; }
  double at(std::span<const int> idx) const { return data_[flat(idx)]; }
  double& at(std::initializer_list<int> idx) { return at(std::span<const int>(idx.begin(), idx.size())); }
  double at(std::initializer_list<int> idx) const { return at(std::span<const int>(idx.begin(), idx.size())); }

  template <class... Is>
  double& operator()(Is... is) {
    const int idx[] = {static_cast<int>(is)...};
    return at(std::span<const int>(idx, sizeof...(Is)));
  }
  template <class... Is>
  double operator()(Is... is) const {
    const int idx[] = {static_cast<int>(is)...};
    return at(std::span<const int>(idx, sizeof...(Is)));
  }

  /// Value of a rank-0 tensor.
  double value() const;

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  std::size_t flat(std::span<const int> idx) const;

  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);
  Tensor& operator*=(double s);

 private:
  Valence valence_;
  std::vector<double> data_;
};

Tensor operator+(Tensor a, const Tensor& b);
Tensor operator-(Tensor a, const Tensor& b);
Tensor operator*(double s, Tensor t);

/// Decomposes a flat offset into per-slot indices (first `rank` entries).
std::array<int, kMaxRank> unflatten(std::size_t flat, int rank);

/// Outer product; the valence is the concatenation of the operands'.
Tensor tensor_product(const Tensor& a, const Tensor& b);

/// Contracts two slots of opposite variance; slots are removed in place.
Tensor contract(const Tensor& t, int slot_a, int slot_b);

/// Largest |component|.
double max_abs(const Tensor& t);

/// Numeric metric data at one point: components, inverse, determinant.
struct MetricValue {
  Tensor g;      // valence {Down, Down}
  Tensor g_inv;  // valence {Up, Up}
  double det = 0.0;

  static MetricValue from_components(const std::array<std::array<double, 4>, 4>& c);

  /// (negative, positive) eigenvalue counts of the component matrix.
  std::pair<int, int> signature() const;

  /// True for signature (-,+,+,+): exactly one negative eigenvalue.
  bool lorentzian() const { return signature() == std::pair<int, int>{1, 3}; }
};

/// Flips one Down slot to Up by contracting with the inverse metric; the slot
/// keeps its position, so lower_index(raise_index(t, s), s) is the identity.
Tensor raise_index(const Tensor& t, int slot, const MetricValue& m);

/// Flips one Up slot to Down by contracting with the metric.
Tensor lower_index(const Tensor& t, int slot, const MetricValue& m);

/// Full self-contraction T^{a...} T_{a...} with every index paired through the
/// metric. Indefinite metrics can make this negative.
double metric_square_norm(const Tensor& t, const MetricValue& m);

}  // namespace riccilab::tensor
