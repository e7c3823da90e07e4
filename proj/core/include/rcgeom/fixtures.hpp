// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

// Analytic test configurations with known answers: a uniformly charged
// region, dust flows adapted to each catalog spacetime, and worldline
// scenarios with closed-form or conserved-quantity oracles.

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "rcgeom/dynamics.hpp"

namespace rcgeom::fixtures {

/// Flat chart with A₀ = −(2π/3) ρ (x² + y² + z²), so J^μ = (cρ, 0, 0, 0)
/// inside the sampled region. Treated as a test field on flat space.
ModelDefinition charge_ball_definition(double rho = 0.1);
SpacetimeModel charge_ball(double rho = 0.1);

/// Known current at x, when the model is one whose current is known
/// (catalog entries are source-free; the charge ball has J⁰ = cρ).
std::optional<Vec4<double>> expected_current(SpacetimeModel const& model, Point const& x);

/// A dust flow for which every exchange identity must hold, keyed on the
/// model name; nullopt for models without one.
std::optional<DustModel> default_dust(SpacetimeModel const& model);

/// Default gauge function used by suites when none is given.
std::string default_gauge_function(SpacetimeModel const& model);

/// Circular geodesic of a Schwarzschild-like metric with mass M at radius r
/// in the equatorial plane, and its proper period.
WorldlineState circular_orbit(double M, double r);
double circular_orbit_period(double M, double r);

/// Exact state at parameter s, when the run has a closed form.
using ClosedForm = std::function<WorldlineState(double s)>;

/// Straight lines on field-free flat charts and uniform acceleration from
/// rest in minkowski-constant-e (V⁰ = cosh(as), V¹ = sinh(as), a = kE).
std::optional<ClosedForm> closed_form(SpacetimeModel const& model, WorldlineState const& init,
                                      double charge_ratio);

}  // namespace rcgeom::fixtures
