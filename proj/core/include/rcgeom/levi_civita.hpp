// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "rcgeom/snapshot.hpp"
#include "rcgeom/tensor.hpp"

namespace rcgeom {

/// Γ_{μν}^λ stored (Down, Down, Up), derivative index first.
struct ConnectionCoefficients {
  Tensor gamma{Variance::Down, Variance::Down, Variance::Up};
  bool torsionless = true;
};

struct CurvatureAtPoint {
  Tensor riemann{Variance::Down, Variance::Down, Variance::Down, Variance::Up};
  Tensor ricci{Variance::Down, Variance::Down};
  double scalar = 0.0;
  Tensor einstein{Variance::Down, Variance::Down};
};

MetricAtPoint metric_at(SpacetimeModel const& model, Point const& x);

ConnectionCoefficients christoffel(SpacetimeModel const& model, Point const& x,
                                   DiffMode mode = DiffMode::kDual);

CurvatureAtPoint lc_curvature(SpacetimeModel const& model, Point const& x,
                              DiffMode mode = DiffMode::kDual);

/// Component fields of a tensor with declared variance, row-major by slot.
struct TensorField {
  std::vector<Variance> variance;
  std::vector<ScalarField> components;  // 4^rank entries

  /// Parses one expression per component against the model's chart.
  static TensorField parse(SpacetimeModel const& model, std::vector<Variance> variance,
                           std::vector<std::string> const& components);
};

struct TensorSample {
  Tensor value;
  std::array<Tensor, 4> partial;  // ∂_α of every component
};

TensorSample sample_tensor(TensorField const& t, Point const& x, DiffMode mode,
                           DomainPredicate const& domain = {});

/// ∇_α t with the derivative slot prepended (Down). Up slots gain
/// +Γ_{αδ}^μ t^{..δ..}, Down slots −Γ_{αμ}^δ t_{..δ..}.
Tensor covariant_derivative(Tensor const& t, std::array<Tensor, 4> const& partial,
                            Arr3<double> const& gamma);

Tensor lc_covariant_derivative(SpacetimeModel const& model, Point const& x,
                               TensorField const& t, DiffMode mode = DiffMode::kDual);

/// ∇̄_μ X^{μν} by the determinant formula and by Christoffel symbols.
struct DivergenceForms {
  Tensor determinant_form{Variance::Up};
  Tensor christoffel_form{Variance::Up};
};

DivergenceForms lc_divergence_antisym2(SpacetimeModel const& model, Point const& x,
                                       TensorField const& X_uu,
                                       DiffMode mode = DiffMode::kDual);

}  // namespace rcgeom
