// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

// Everything the identity checks need at one chart point.
//
// Index layout follows the formulas left to right. Connections are
// Γ_{μν}^λ at [μ][ν][λ], the first lower index being the derivative
// direction; curvature R_{μνλ}^χ at [μ][ν][λ][χ]; partials of any object
// put the derivative index first.

#pragma once

#include "rcgeom/field_jets.hpp"
#include "rcgeom/spacetime.hpp"
#include "rcgeom/tensor.hpp"

namespace rcgeom {

template <class S>
struct Geometry {
  // metric
  Arr2<S> g{}, g_inv{};
  Arr3<S> dg{};
  S det{}, sqrt_neg_det{};

  // Levi-Civita
  Arr3<S> lc{};
  Arr4<S> d_lc{};
  Arr4<S> riemann_lc{};
  Arr2<S> ricci_lc{};
  S scalar_lc{};
  Arr2<S> einstein_dd{}, einstein_uu{};

  // electromagnetism
  Vec4<S> A{};
  Arr2<S> dA{};
  Arr2<S> F_dd{}, F_mixed{}, F_uu{};  // F_mixed[ν][λ] = F_ν^{·λ}
  Arr3<S> dF_dd{}, dF_uu{};
  S F2{};
  Vec4<S> J_up{};              // determinant formula
  Vec4<S> J_up_christoffel{};  // ∂F + Γ̄F form
  Vec4<S> J_up_rc{};           // full connection
  Vec4<S> sqrt_neg_det_J{};    // (-det g)^{1/2} J^ν
  Vec4<S> rc_pair{};           // K_{μδ}^μ F^{δν} + K_{μδ}^ν F^{μδ}
  Arr2<S> T_dd{}, T_uu{};
  Arr3<S> dT_uu{};
  Vec4<S> exchange_pair{};     // K_{μδ}^μ T^{δν} + K_{μδ}^ν T^{μδ}
  Arr3<S> chern_simons{};

  // Riemann-Cartan
  Arr3<S> K{}, K_down{};
  Arr4<S> dK{};
  Arr3<S> torsion{};
  Arr3<S> gamma{};
  Arr4<S> d_gamma{};
  Arr4<S> riemann_rc{};         // from Γ directly
  Arr4<S> riemann_rc_split{};   // R̄ + ∇̄K − ∇̄K + KK − KK
  Arr4<S> quadratic_pair{};     // K_{μρ}^χ K_{νλ}^ρ − K_{νρ}^χ K_{μλ}^ρ
  Arr2<S> ricci_rc{};
  S scalar_rc{};
  Vec4<S> k_trace{};            // g^{να} g^{μλ} K_{ανλ}
  S div_k_trace{};              // ∇̄_μ k^μ
};

/// Pure algebra on sampled fields; S is double or Jet1<double>.
/// Throws DegenerateMetric.
template <class S>
Geometry<S> compute_geometry(FieldInputs<S> const& in, PhysicalConstants const& k);

extern template Geometry<double> compute_geometry(FieldInputs<double> const&,
                                                  PhysicalConstants const&);
extern template Geometry<Jet1<double>> compute_geometry(FieldInputs<Jet1<double>> const&,
                                                        PhysicalConstants const&);

/// Geometry plus the third-order partials needed by divergence checks.
struct GeometrySnapshot {
  Point x{};
  DiffMode mode = DiffMode::kDual;
  Geometry<double> geo;
  Arr3<double> d_einstein_uu{};   // ∂_α Ḡ^{μν}
  Arr2<double> d_sqrt_neg_det_J{};  // ∂_α[(-det g)^{1/2} J^ν]
  bool has_third = false;
};

/// Throws DomainError or DegenerateMetric.
GeometrySnapshot make_snapshot(SpacetimeModel const& model, Point const& x,
                               DiffMode mode = DiffMode::kDual, bool third_order = true);

/// ∇̄_μ X^{μν} of a rank-2 contravariant field from its value and partials.
Vec4<double> lc_divergence(Geometry<double> const& geo, Arr2<double> const& X,
                           Arr3<double> const& dX);

/// (-det g)^{-1/2} ∂_ν[(-det g)^{1/2} J^ν].
double current_conservation(GeometrySnapshot const& s);

/// ∇̄_μ Ḡ^{μν}.
Vec4<double> einstein_divergence(GeometrySnapshot const& s);

/// Inverse of a real metric; throws DegenerateMetric or SignatureError.
Arr2<double> invert_metric(Arr2<double> const& g, double& det);

/// Array-to-tensor adapters for the public per-module API.
Tensor to_tensor(Vec4<double> const& a, Variance v0);
Tensor to_tensor(Arr2<double> const& a, Variance v0, Variance v1);
Tensor to_tensor(Arr3<double> const& a, Variance v0, Variance v1, Variance v2);
Tensor to_tensor(Arr4<double> const& a, Variance v0, Variance v1, Variance v2, Variance v3);
Arr3<double> to_array3(Tensor const& t);

/// Metric at the point in tensor form.
MetricAtPoint metric_of(Geometry<double> const& geo);

}  // namespace rcgeom
