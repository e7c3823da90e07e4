// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rcgeom/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace rcgeom {

double max_abs(Tensor const& t) {
  double m = 0.0;
  for (double x : t.components()) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(Tensor const& a, Tensor const& b) {
  if (!a.same_shape(b)) throw ContractViolation("tensor shape mismatch");
  double m = 0.0;
  for (int k = 0; k < a.size(); ++k) {
    m = std::max(m, std::abs(a.at_flat(k) - b.at_flat(k)));
  }
  return m;
}

namespace {

Tensor make_rank2_checked(std::array<std::array<double, 4>, 4> const& a,
                          Variance v0, Variance v1, double sign,
                          char const* what) {
  double scale = 0.0;
  for (auto const& row : a) {
    for (double x : row) scale = std::max(scale, std::abs(x));
  }
  double tol = 1e-12 * std::max(1.0, scale);
  Tensor t({v0, v1});
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (std::abs(a[i][j] - sign * a[j][i]) > tol) {
        throw ContractViolation(std::string("input is not ") + what +
                                " at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
      }
      t(i, j) = a[i][j];
    }
  }
  return t;
}

}  // namespace

Tensor make_symmetric(std::array<std::array<double, 4>, 4> const& a,
                      Variance v0, Variance v1) {
  return make_rank2_checked(a, v0, v1, 1.0, "symmetric");
}

Tensor make_antisymmetric(std::array<std::array<double, 4>, 4> const& a,
                          Variance v0, Variance v1) {
  return make_rank2_checked(a, v0, v1, -1.0, "antisymmetric");
}

template <class S>
BasicTensor<S> outer(BasicTensor<S> const& a, BasicTensor<S> const& b) {
  if (a.rank() + b.rank() > kMaxRank) {
    throw ContractViolation("outer product rank exceeds 4");
  }
  std::array<Variance, kMaxRank> v{};
  int r = 0;
  for (Variance x : a.variances()) v[r++] = x;
  for (Variance x : b.variances()) v[r++] = x;
  BasicTensor<S> out(std::span<Variance const>(v.data(), r));
  int nb = b.size();
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < nb; ++j) out.at_flat(i * nb + j) = a.at_flat(i) * b.at_flat(j);
  }
  return out;
}

template <class S>
BasicMetricAtPoint<S> make_metric(BasicTensor<S> const& g) {
  if (g.rank() != 2 || g.variance(0) != Variance::Down ||
      g.variance(1) != Variance::Down) {
    throw ContractViolation("metric must be a rank-2 covariant tensor");
  }
  // 2x2 sub-determinants of the top and bottom row pairs.
  S s0 = g(0, 0) * g(1, 1) - g(1, 0) * g(0, 1);
  S s1 = g(0, 0) * g(1, 2) - g(1, 0) * g(0, 2);
  S s2 = g(0, 0) * g(1, 3) - g(1, 0) * g(0, 3);
  S s3 = g(0, 1) * g(1, 2) - g(1, 1) * g(0, 2);
  S s4 = g(0, 1) * g(1, 3) - g(1, 1) * g(0, 3);
  S s5 = g(0, 2) * g(1, 3) - g(1, 2) * g(0, 3);
  S c5 = g(2, 2) * g(3, 3) - g(3, 2) * g(2, 3);
  S c4 = g(2, 1) * g(3, 3) - g(3, 1) * g(2, 3);
  S c3 = g(2, 1) * g(3, 2) - g(3, 1) * g(2, 2);
  S c2 = g(2, 0) * g(3, 3) - g(3, 0) * g(2, 3);
  S c1 = g(2, 0) * g(3, 2) - g(3, 0) * g(2, 2);
  S c0 = g(2, 0) * g(3, 1) - g(3, 0) * g(2, 1);
  S det = s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;

  double scale = 0.0;
  for (int k = 0; k < 16; ++k) {
    scale = std::max(scale, std::abs(scalar_value(g.at_flat(k))));
  }
  double d = scalar_value(det);
  if (!(std::abs(d) >= 1e-10 * std::pow(scale, 4)) || scale == 0.0) {
    throw DegenerateMetric("metric determinant " + std::to_string(d) +
                           " is degenerate");
  }

  S inv = S(1.0) / det;
  BasicTensor<S> u({Variance::Up, Variance::Up});
  u(0, 0) = (g(1, 1) * c5 - g(1, 2) * c4 + g(1, 3) * c3) * inv;
  u(0, 1) = (-g(0, 1) * c5 + g(0, 2) * c4 - g(0, 3) * c3) * inv;
  u(0, 2) = (g(3, 1) * s5 - g(3, 2) * s4 + g(3, 3) * s3) * inv;
  u(0, 3) = (-g(2, 1) * s5 + g(2, 2) * s4 - g(2, 3) * s3) * inv;
  u(1, 0) = (-g(1, 0) * c5 + g(1, 2) * c2 - g(1, 3) * c1) * inv;
  u(1, 1) = (g(0, 0) * c5 - g(0, 2) * c2 + g(0, 3) * c1) * inv;
  u(1, 2) = (-g(3, 0) * s5 + g(3, 2) * s2 - g(3, 3) * s1) * inv;
  u(1, 3) = (g(2, 0) * s5 - g(2, 2) * s2 + g(2, 3) * s1) * inv;
  u(2, 0) = (g(1, 0) * c4 - g(1, 1) * c2 + g(1, 3) * c0) * inv;
  u(2, 1) = (-g(0, 0) * c4 + g(0, 1) * c2 - g(0, 3) * c0) * inv;
  u(2, 2) = (g(3, 0) * s4 - g(3, 1) * s2 + g(3, 3) * s0) * inv;
  u(2, 3) = (-g(2, 0) * s4 + g(2, 1) * s2 - g(2, 3) * s0) * inv;
  u(3, 0) = (-g(1, 0) * c3 + g(1, 1) * c1 - g(1, 2) * c0) * inv;
  u(3, 1) = (g(0, 0) * c3 - g(0, 1) * c1 + g(0, 2) * c0) * inv;
  u(3, 2) = (-g(3, 0) * s3 + g(3, 1) * s1 - g(3, 2) * s0) * inv;
  u(3, 3) = (g(2, 0) * s3 - g(2, 1) * s1 + g(2, 2) * s0) * inv;
  // The adjugate of a symmetric matrix is symmetric; average away roundoff.
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      S avg = S(0.5) * (u(i, j) + u(j, i));
      u(i, j) = avg;
      u(j, i) = avg;
    }
  }

  using std::sqrt;
  BasicMetricAtPoint<S> m;
  m.g_dd = g;
  m.g_uu = u;
  m.det_g = det;
  m.sqrt_neg_det = d < 0.0 ? sqrt(-det) : S(0.0);
  return m;
}

std::pair<int, int> signature_counts(Tensor const& g) {
  Eigen::Matrix4d a;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) a(i, j) = g(i, j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(
      a, Eigen::EigenvaluesOnly);
  int pos = 0;
  int neg = 0;
  for (int i = 0; i < 4; ++i) {
    double e = solver.eigenvalues()(i);
    if (e > 0.0) ++pos;
    if (e < 0.0) ++neg;
  }
  return {pos, neg};
}

double inverse_residual(MetricAtPoint const& m) {
  double r = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      double s = 0.0;
      for (int a = 0; a < 4; ++a) s += m.g_uu(mu, a) * m.g_dd(a, nu);
      r = std::max(r, std::abs(s - (mu == nu ? 1.0 : 0.0)));
    }
  }
  return r;
}

MetricAtPoint make_validated_metric(Tensor const& g_dd) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (g_dd(i, j) != g_dd(j, i)) {
        throw SignatureError("metric is not symmetric");
      }
    }
  }
  MetricAtPoint m = make_metric(g_dd);
  if (!(m.det_g < 0.0)) {
    throw SignatureError("metric determinant is not negative");
  }
  auto [pos, neg] = signature_counts(g_dd);
  if (pos != 1 || neg != 3) {
    throw SignatureError("metric signature is (" + std::to_string(pos) +
                         " positive, " + std::to_string(neg) +
                         " negative), expected (+,-,-,-)");
  }
  if (inverse_residual(m) > 1e-12) {
    throw SignatureError("metric inverse residual exceeds 1e-12");
  }
  return m;
}

template <class S>
BasicTensor<S> raise_index(BasicTensor<S> const& t, int slot,
                           BasicMetricAtPoint<S> const& m) {
  if (t.variance(slot) != Variance::Down) {
    throw ContractViolation("raise_index: slot " + std::to_string(slot) +
                            " is already Up");
  }
  std::array<Variance, kMaxRank> v{};
  std::copy(t.variances().begin(), t.variances().end(), v.begin());
  v[slot] = Variance::Up;
  BasicTensor<S> out(std::span<Variance const>(v.data(), t.rank()));
  for (int k = 0; k < out.size(); ++k) {
    auto idx = out.unflatten(k);
    int mu = idx[slot];
    S acc{};
    for (int nu = 0; nu < 4; ++nu) {
      idx[slot] = nu;
      acc += m.g_uu(mu, nu) * t.at_flat(t.flatten(idx));
    }
    out.at_flat(k) = acc;
  }
  return out;
}

template <class S>
BasicTensor<S> lower_index(BasicTensor<S> const& t, int slot,
                           BasicMetricAtPoint<S> const& m) {
  if (t.variance(slot) != Variance::Up) {
    throw ContractViolation("lower_index: slot " + std::to_string(slot) +
                            " is already Down");
  }
  std::array<Variance, kMaxRank> v{};
  std::copy(t.variances().begin(), t.variances().end(), v.begin());
  v[slot] = Variance::Down;
  BasicTensor<S> out(std::span<Variance const>(v.data(), t.rank()));
  for (int k = 0; k < out.size(); ++k) {
    auto idx = out.unflatten(k);
    int mu = idx[slot];
    S acc{};
    for (int nu = 0; nu < 4; ++nu) {
      idx[slot] = nu;
      acc += m.g_dd(mu, nu) * t.at_flat(t.flatten(idx));
    }
    out.at_flat(k) = acc;
  }
  return out;
}

template <class S>
BasicTensor<S> contract(BasicTensor<S> const& t, int slot_a, int slot_b) {
  if (slot_a == slot_b) throw ContractViolation("contract: identical slots");
  if (t.variance(slot_a) == t.variance(slot_b)) {
    throw ContractViolation("contract: slots " + std::to_string(slot_a) +
                            " and " + std::to_string(slot_b) +
                            " have the same variance");
  }
  std::array<Variance, kMaxRank> v{};
  int r = 0;
  for (int s = 0; s < t.rank(); ++s) {
    if (s != slot_a && s != slot_b) v[r++] = t.variance(s);
  }
  BasicTensor<S> out(std::span<Variance const>(v.data(), r));
  for (int k = 0; k < out.size(); ++k) {
    auto oidx = out.unflatten(k);
    std::array<int, kMaxRank> idx{};
    int o = 0;
    for (int s = 0; s < t.rank(); ++s) {
      if (s != slot_a && s != slot_b) idx[s] = oidx[o++];
    }
    S acc{};
    for (int a = 0; a < 4; ++a) {
      idx[slot_a] = a;
      idx[slot_b] = a;
      acc += t.at_flat(t.flatten(idx));
    }
    out.at_flat(k) = acc;
  }
  return out;
}

double scalar_product(Tensor const& x, Tensor const& y,
                      MetricAtPoint const& m) {
  if (x.rank() != 1 || y.rank() != 1 || x.variance(0) != Variance::Down ||
      y.variance(0) != Variance::Down) {
    throw ContractViolation("scalar_product expects two 1-forms");
  }
  double s = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) s += m.g_uu(mu, nu) * x(mu) * y(nu);
  }
  return s;
}

Tensor antisymmetrize_3(Tensor const& t) {
  if (t.rank() != 3 || t.variance(0) != Variance::Down ||
      t.variance(1) != Variance::Down || t.variance(2) != Variance::Down) {
    throw ContractViolation("antisymmetrize_3 expects a rank-3 covariant tensor");
  }
  Tensor out({Variance::Down, Variance::Down, Variance::Down});
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        out(a, b, c) = t(a, b, c) + t(b, c, a) + t(c, a, b);
      }
    }
  }
  return out;
}

Tensor kronecker() {
  Tensor d({Variance::Up, Variance::Down});
  for (int i = 0; i < 4; ++i) d(i, i) = 1.0;
  return d;
}

#define RCGEOM_INSTANTIATE(S)                                                  \
  template BasicTensor<S> outer(BasicTensor<S> const&, BasicTensor<S> const&); \
  template BasicMetricAtPoint<S> make_metric(BasicTensor<S> const&);           \
  template BasicTensor<S> raise_index(BasicTensor<S> const&, int,              \
                                      BasicMetricAtPoint<S> const&);           \
  template BasicTensor<S> lower_index(BasicTensor<S> const&, int,              \
                                      BasicMetricAtPoint<S> const&);           \
  template BasicTensor<S> contract(BasicTensor<S> const&, int, int);

RCGEOM_INSTANTIATE(double)
RCGEOM_INSTANTIATE(Jet1<double>)

#undef RCGEOM_INSTANTIATE

}  // namespace rcgeom
