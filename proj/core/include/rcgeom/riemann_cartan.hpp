// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rcgeom/levi_civita.hpp"

namespace rcgeom {

/// K_{μν}^λ (Down, Down, Up) and K_{μνλ} = g_{βλ} K_{μν}^β.
struct Contorsion {
  Tensor mixed{Variance::Down, Variance::Down, Variance::Up};
  Tensor all_down{Variance::Down, Variance::Down, Variance::Down};
};

/// T_{μν}^λ, antisymmetric in the lower pair.
struct Torsion {
  Tensor mixed{Variance::Down, Variance::Down, Variance::Up};
};

/// Lowers the last slot and checks K_{μνλ} = −K_{μλν} to 1e-12 relative
/// (ContractViolation otherwise).
Contorsion make_contorsion(Tensor const& mixed, MetricAtPoint const& m);

/// K_{μν}^λ = −C A_μ F_ν^{·λ} with C = G/c^4.
Contorsion contorsion_from_potential(SpacetimeModel const& model, Point const& x,
                                     DiffMode mode = DiffMode::kDual);

/// K_{μνβ} = ½(T_{μνβ} − T_{μβν} − T_{νβμ}), all indices lowered.
Contorsion contorsion_from_torsion(Torsion const& t, MetricAtPoint const& m);

/// T_{μν}^λ = K_{μν}^λ − K_{νμ}^λ. Feeds the result back through
/// contorsion_from_torsion and throws ConventionViolation if the round trip
/// misses by more than 1e-8.
Torsion torsion_from_contorsion(Contorsion const& k, MetricAtPoint const& m);

/// Γ = Γ̄ + K.
ConnectionCoefficients full_connection(ConnectionCoefficients const& lc, Contorsion const& k);

struct RcCurvature : CurvatureAtPoint {
  /// max |direct − (R̄ + ∇̄K − ∇̄K + KK − KK)|
  double decomposition_residual = 0.0;
  /// max |K_{μρ}^χ K_{νλ}^ρ − K_{νρ}^χ K_{μλ}^ρ|
  double quadratic_residual = 0.0;
};

/// Throws ConventionViolation when the decomposition residual exceeds 1e-6.
RcCurvature rc_curvature(SpacetimeModel const& model, Point const& x,
                         DiffMode mode = DiffMode::kDual);

struct ScalarCurvatureSplit {
  double R = 0.0;              // trace of the direct RC curvature
  double R_bar = 0.0;
  double em_term = 0.0;        // C F_{μν} F^{μν}
  double coupling_term = 0.0;  // (8πC/c) A_μ J^μ
  double trace_form = 0.0;     // R̄ + 2 ∇̄_μ K_ν^{·νμ}
};

/// Throws ConventionViolation when either split misses R by more than 1e-6.
ScalarCurvatureSplit scalar_curvature_split(SpacetimeModel const& model, Point const& x,
                                            DiffMode mode = DiffMode::kDual);
ScalarCurvatureSplit scalar_curvature_split(Geometry<double> const& geo,
                                            PhysicalConstants const& k);

}  // namespace rcgeom
