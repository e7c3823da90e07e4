// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rcgeom/levi_civita.hpp"

namespace rcgeom {

struct EMField {
  Tensor F_dd{Variance::Down, Variance::Down};
  Tensor F_uu{Variance::Up, Variance::Up};
  Tensor F_mixed{Variance::Down, Variance::Up};  // F_ν^{·λ} = g^{λα} F_{να}
  double invariant_F2 = 0.0;                       // F_{αβ} F^{αβ}
};

struct CurrentDensity {
  Tensor J_up{Variance::Up};
  Tensor J_down{Variance::Down};
  /// max_ν |∇_μF^{μν} − ∇̄_μF^{μν}|·c/4π, full vs Levi-Civita connection.
  double connection_mismatch = 0.0;
};

struct StressEnergyEM {
  Tensor T_dd{Variance::Down, Variance::Down};
};

/// F_{μν} = ∂_μA_ν − ∂_νA_μ.
EMField field_strength(SpacetimeModel const& model, Point const& x,
                       DiffMode mode = DiffMode::kDual);

/// max over (μνλ) of |∂_μF_{νλ} + ∂_νF_{λμ} + ∂_λF_{μν}|.
double homogeneous_maxwell_residual(SpacetimeModel const& model, Point const& x,
                                    DiffMode mode = DiffMode::kDual);
/// Same cyclic sum for partials given as dF[α][μ][ν] = ∂_α F_{μν}.
double homogeneous_residual(Arr3<double> const& dF);
/// Same cyclic sum for an arbitrary covariant rank-2 field (need not come
/// from a potential).
double homogeneous_residual(TensorField const& F_dd, Point const& x,
                            DiffMode mode = DiffMode::kDual);

/// J^ν = (c/4π)(−det g)^{−1/2} ∂_μ[(−det g)^{1/2} F^{μν}]. The full-connection
/// divergence is computed too; a mismatch above 1e-6 throws
/// ConventionViolation since the ansatz guarantees equality.
CurrentDensity current(SpacetimeModel const& model, Point const& x,
                       DiffMode mode = DiffMode::kDual);

/// T_{μν} = (1/4π)(−F_μ^{·β} F_{νβ} + ¼ g_{μν} F^{αβ} F_{αβ}).
StressEnergyEM stress_energy(SpacetimeModel const& model, Point const& x,
                             DiffMode mode = DiffMode::kDual);

/// (1/3!)(A_μF_{νλ} + A_λF_{μν} + A_νF_{λμ}).
Tensor chern_simons_density(SpacetimeModel const& model, Point const& x,
                            DiffMode mode = DiffMode::kDual);

}  // namespace rcgeom
