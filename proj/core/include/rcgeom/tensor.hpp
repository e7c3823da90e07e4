// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

// Dense small-tensor algebra in four dimensions.
//
// Components are stored row-major by slot order, and slot order matches the
// left-to-right index order of the formulas (e.g. Γ_{μν}^λ is slots
// (Down, Down, Up) indexed as t(mu, nu, lambda)). All tensors live in the
// coordinate basis.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>

#include "rcgeom/error.hpp"
#include "rcgeom/jet.hpp"

namespace rcgeom {

enum class Variance : std::uint8_t { Up, Down };

inline constexpr int kMaxRank = 4;

template <class S>
class BasicTensor {
 public:
  static constexpr int kCapacity = 256;  // 4^kMaxRank

  /// Rank-0 zero.
  BasicTensor() = default;

  /// Zero tensor with the given slot variances.
  explicit BasicTensor(std::initializer_list<Variance> variance)
      : BasicTensor(std::span<Variance const>(variance.begin(), variance.size())) {}

  explicit BasicTensor(std::span<Variance const> variance) {
    if (variance.size() > static_cast<std::size_t>(kMaxRank)) {
      throw ContractViolation("tensor rank exceeds 4");
    }
    rank_ = static_cast<std::uint8_t>(variance.size());
    std::copy(variance.begin(), variance.end(), variance_.begin());
  }

  static BasicTensor scalar(S const& value) {
    BasicTensor t;
    t.c_[0] = value;
    return t;
  }

  int rank() const noexcept { return rank_; }
  int size() const noexcept { return 1 << (2 * rank_); }
  Variance variance(int slot) const {
    check_slot(slot);
    return variance_[static_cast<std::size_t>(slot)];
  }
  std::span<Variance const> variances() const noexcept {
    return {variance_.data(), rank_};
  }

  std::span<S> components() noexcept {
    return {c_.data(), static_cast<std::size_t>(size())};
  }
  std::span<S const> components() const noexcept {
    return {c_.data(), static_cast<std::size_t>(size())};
  }

  template <class... I>
  S& operator()(I... idx) noexcept {
    static_assert(sizeof...(I) <= kMaxRank);
    return c_[flat(idx...)];
  }
  template <class... I>
  S const& operator()(I... idx) const noexcept {
    static_assert(sizeof...(I) <= kMaxRank);
    return c_[flat(idx...)];
  }

  S& at_flat(int k) noexcept { return c_[static_cast<std::size_t>(k)]; }
  S const& at_flat(int k) const noexcept {
    return c_[static_cast<std::size_t>(k)];
  }

  /// Multi-index of flat offset k (slot 0 first).
  std::array<int, kMaxRank> unflatten(int k) const noexcept {
    std::array<int, kMaxRank> idx{};
    for (int s = rank_ - 1; s >= 0; --s) {
      idx[static_cast<std::size_t>(s)] = k & 3;
      k >>= 2;
    }
    return idx;
  }
  int flatten(std::array<int, kMaxRank> const& idx) const noexcept {
    int k = 0;
    for (int s = 0; s < rank_; ++s) k = (k << 2) | idx[static_cast<std::size_t>(s)];
    return k;
  }

  bool same_shape(BasicTensor const& o) const noexcept {
    return rank_ == o.rank_ &&
           std::equal(variance_.begin(), variance_.begin() + rank_,
                      o.variance_.begin());
  }

  BasicTensor& operator+=(BasicTensor const& o) {
    require_same_shape(o);
    for (int k = 0; k < size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  BasicTensor& operator-=(BasicTensor const& o) {
    require_same_shape(o);
    for (int k = 0; k < size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  BasicTensor& operator*=(S const& a) {
    for (int k = 0; k < size(); ++k) c_[k] = c_[k] * a;
    return *this;
  }
  friend BasicTensor operator+(BasicTensor a, BasicTensor const& b) {
    return a += b;
  }
  friend BasicTensor operator-(BasicTensor a, BasicTensor const& b) {
    return a -= b;
  }
  friend BasicTensor operator*(S const& s, BasicTensor a) { return a *= s; }
  friend BasicTensor operator*(BasicTensor a, S const& s) { return a *= s; }

 private:
  template <class... I>
  static constexpr int flat(I... idx) noexcept {
    int k = 0;
    ((k = (k << 2) | static_cast<int>(idx)), ...);
    return k;
  }
  void check_slot(int slot) const {
    if (slot < 0 || slot >= rank_) {
      throw ContractViolation("slot " + std::to_string(slot) +
                              " out of range for rank " +
                              std::to_string(rank_));
    }
  }
  void require_same_shape(BasicTensor const& o) const {
    if (!same_shape(o)) throw ContractViolation("tensor shape mismatch");
  }

  std::uint8_t rank_ = 0;
  std::array<Variance, kMaxRank> variance_{};
  std::array<S, kCapacity> c_{};
};

using Tensor = BasicTensor<double>;

/// Largest |component| of a real tensor.
double max_abs(Tensor const& t);
/// Largest componentwise |a - b|; shapes must agree.
double max_abs_diff(Tensor const& a, Tensor const& b);

/// Values of a jet-valued tensor, dropping derivative information.
template <class S>
Tensor values_of(BasicTensor<S> const& t) {
  Tensor out(t.variances());
  for (int k = 0; k < t.size(); ++k) out.at_flat(k) = scalar_value(t.at_flat(k));
  return out;
}

/// Rank-2 tensor from a 4x4 array, validating |a_ij - a_ji| within the
/// relative tolerance 1e-12 * max(1, max|a|).
Tensor make_symmetric(std::array<std::array<double, 4>, 4> const& a,
                      Variance v0, Variance v1);
/// Rank-2 tensor validating |a_ij + a_ji| within the same tolerance.
Tensor make_antisymmetric(std::array<std::array<double, 4>, 4> const& a,
                          Variance v0, Variance v1);

/// Outer product a ⊗ b, slots of a first.
template <class S>
BasicTensor<S> outer(BasicTensor<S> const& a, BasicTensor<S> const& b);

//---------------------------------------------------------------------------//
// Metric at a point
//---------------------------------------------------------------------------//

template <class S>
struct BasicMetricAtPoint {
  BasicTensor<S> g_dd;  ///< g_{μν}
  BasicTensor<S> g_uu;  ///< g^{μν}
  S det_g{};
  S sqrt_neg_det{};
};

using MetricAtPoint = BasicMetricAtPoint<double>;

/// Inverse, determinant and (-det g)^{1/2} of a symmetric covariant metric.
/// Throws DegenerateMetric when |det g| < 1e-10 * (max|g_{μν}|)^4.
template <class S>
BasicMetricAtPoint<S> make_metric(BasicTensor<S> const& g_dd);

/// Full validation for real metrics: symmetry, inverse identity to 1e-12,
/// det g < 0 and eigenvalue signature (+,-,-,-). Throws SignatureError.
MetricAtPoint make_validated_metric(Tensor const& g_dd);

/// Number of (positive, negative) eigenvalues of a symmetric rank-2 tensor.
std::pair<int, int> signature_counts(Tensor const& g_dd);

/// Residual max|g^{μα} g_{αν} - δ^μ_ν|.
double inverse_residual(MetricAtPoint const& m);

//---------------------------------------------------------------------------//
// Index gymnastics
//---------------------------------------------------------------------------//

/// t'^{..μ..} = g^{μν} t_{..ν..} on the given slot, which must be Down.
template <class S>
BasicTensor<S> raise_index(BasicTensor<S> const& t, int slot,
                           BasicMetricAtPoint<S> const& m);

/// t'_{..μ..} = g_{μν} t^{..ν..} on the given slot, which must be Up.
template <class S>
BasicTensor<S> lower_index(BasicTensor<S> const& t, int slot,
                           BasicMetricAtPoint<S> const& m);

/// Trace over one Up and one Down slot; rank drops by two.
template <class S>
BasicTensor<S> contract(BasicTensor<S> const& t, int slot_a, int slot_b);

/// g^{μν} x_μ y_ν for two 1-forms.
double scalar_product(Tensor const& x, Tensor const& y, MetricAtPoint const& m);

/// Cyclic sum t_{μνλ} + t_{νλμ} + t_{λμν} of a rank-3 covariant tensor
/// (not divided by 3).
Tensor antisymmetrize_3(Tensor const& t);

/// Kronecker delta δ^μ_ν (Up, Down).
Tensor kronecker();

}  // namespace rcgeom
