// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

// A ↦ A + dφ and what it does (and does not) change.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rcgeom/riemann_cartan.hpp"

namespace rcgeom {

struct GaugeFunction {
  ExprPtr phi;

  static GaugeFunction parse(SpacetimeModel const& model, std::string const& src);
};

/// Same metric and constants, A'_μ = A_μ + ∂_μφ built symbolically.
SpacetimeModel transform_potential(SpacetimeModel const& model, GaugeFunction const& phi);

struct TransformedContorsion {
  Contorsion recomputed;   // −C A'_μ F_ν^{·λ} from the transformed model
  Tensor shift{Variance::Down, Variance::Down, Variance::Up};  // recomputed − original
  /// max |recomputed − (K − C ∂_μφ F_ν^{·λ})|, the shift implied by the
  /// definition. Above 1e-12 (relative) throws ConventionViolation.
  double route_mismatch = 0.0;
  /// max |recomputed − (K + C ∂_μφ F_ν^{·λ})|, the shift with the opposite
  /// sign. Nonzero whenever ∂φ and F are; reported, not enforced.
  double opposite_sign_mismatch = 0.0;
};

TransformedContorsion transformed_contorsion(SpacetimeModel const& model,
                                             GaugeFunction const& phi, Point const& x,
                                             DiffMode mode = DiffMode::kDual);

struct CurvatureShift {
  double R_new = 0.0;
  double R_old = 0.0;
  /// (8πC/c)(−g)^{−1/2} ∂_μ[(−g)^{1/2} φ J^μ]
  double divergence_term = 0.0;
  double residual() const { return std::abs(R_new - R_old - divergence_term); }
};

/// Throws ConventionViolation when the residual exceeds 1e-6.
CurvatureShift gauge_curvature_shift(SpacetimeModel const& model, GaugeFunction const& phi,
                                     Point const& x, DiffMode mode = DiffMode::kDual);

/// Per-point comparison of the original and transformed pipelines.
struct GaugePointDeltas {
  double F = 0.0;
  double J = 0.0;
  double T = 0.0;
  double einstein_residual = 0.0;
  double lorentz_rhs = 0.0;
  double K = 0.0;         // expected to change
  double torsion = 0.0;   // expected to change
  double rc_curvature = 0.0;  // expected to change
  double route_mismatch = 0.0;
  double opposite_sign_mismatch = 0.0;
  double curvature_shift_residual = 0.0;
};

GaugePointDeltas gauge_point(SpacetimeModel const& model, SpacetimeModel const& transformed,
                             GaugeFunction const& phi, Point const& x, DiffMode mode);

struct GaugeCheck {
  std::string id;
  double max_value = 0.0;
  double tolerance = 0.0;
  /// Evidence only (e.g. how much K moved); never fails.
  bool informational = false;
  bool pass = false;
};

/// Runs gauge_point over the model's grid (`jobs` worker threads) and
/// compares against the invariance tolerances.
std::vector<GaugeCheck> gauge_invariance_suite(SpacetimeModel const& model,
                                               GaugeFunction const& phi,
                                               DiffMode mode = DiffMode::kDual, int jobs = 1);

/// Einstein residual used by the suites: Ḡ_{μν} − 8πC T_{μν} for
/// Einstein-Maxwell models, Ḡ_{μν} alone for test fields on vacuum.
double einstein_residual(Geometry<double> const& geo, SpacetimeModel const& model);

}  // namespace rcgeom
