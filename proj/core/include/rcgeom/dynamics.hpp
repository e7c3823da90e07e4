// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

// Charged dust and test-particle worldlines.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rcgeom/snapshot.hpp"

namespace rcgeom {

/// Pressureless charged dust given analytically on the model's chart.
struct DustModel {
  ScalarField rho0;  // proper mass density
  ScalarField rhoq;  // proper charge density
  std::array<ScalarField, 4> V_up;
  DomainPredicate support;

  /// Parses the fields against the model's chart and parameters.
  static DustModel parse(SpacetimeModel const& model, std::string const& rho0,
                         std::string const& rhoq, std::array<std::string, 4> const& V,
                         std::string const& support = "");
};

struct WorldlineState {
  Point x{};
  Vec4<double> V{};
  double s = 0.0;
};

enum class IntegratorMethod { kRk4, kRk45Adaptive };

struct IntegratorConfig {
  double ds = 1e-3;
  long steps = 1000;
  IntegratorMethod method = IntegratorMethod::kRk4;
  int renormalize_every = 0;  // 0 = never
  int save_every = 1;
  double abs_tol = 1e-12;  // adaptive only
  double rel_tol = 1e-12;
};

struct WorldlineDerivative {
  Vec4<double> dx{};
  Vec4<double> dV{};
};

/// dx^μ/ds = V^μ, dV^ν/ds = −Γ̄_{μδ}^ν V^μ V^δ − k F_μ^{·ν} V^μ with
/// k = ρ_q/(ρ₀c²). Throws DomainError off the chart domain.
WorldlineDerivative lorentz_rhs(SpacetimeModel const& model, WorldlineState const& state,
                                double charge_ratio);

/// g_{μν}(x) V^μ V^ν.
double velocity_norm(SpacetimeModel const& model, Point const& x, Vec4<double> const& V);
/// V rescaled so that g(V,V) = 1; throws ContractViolation unless timelike.
Vec4<double> normalize_velocity(SpacetimeModel const& model, Point const& x,
                                Vec4<double> const& V);

struct WorldlineResult {
  std::vector<WorldlineState> samples;  // includes the initial state
  double max_norm_drift = 0.0;          // max |g(V,V) − 1| over every step
  std::optional<std::string> error;     // set when the run stopped early
};

/// Requires |g(V,V) − 1| ≤ 1e-6 at the start (ContractViolation otherwise).
/// A domain exit ends the run with `error` set; samples hold the last
/// valid state.
WorldlineResult integrate_worldline(SpacetimeModel const& model, WorldlineState const& init,
                                    double charge_ratio, IntegratorConfig const& cfg);

/// max_ν |a^ν + k F^{μν} V_μ + C (A·V) F_δ^{·ν} V^δ| where
/// a^ν = dV^ν/ds + Γ̄_{μδ}^ν V^μ V^δ + K_{μδ}^ν V^μ V^δ is the RC transport of
/// V along the worldline. dV/ds defaults to the Lorentz right-hand side.
double rc_transport_residual(SpacetimeModel const& model, WorldlineState const& state,
                             double charge_ratio);
double rc_transport_residual(SpacetimeModel const& model, WorldlineState const& state,
                             double charge_ratio, Vec4<double> const& dV_ds);
/// The same combination with the coupling term entering with a minus sign.
/// Reported as an observation, never enforced.
double rc_transport_residual_as_printed(SpacetimeModel const& model, WorldlineState const& state,
                                        double charge_ratio, Vec4<double> const& dV_ds);

struct ExchangeResiduals {
  double stress_pair = 0.0;       // K_{μδ}^μ T^{δν} + K_{μδ}^ν T^{μδ}
  double em_divergence = 0.0;     // ∇_μT^{μν} − (1/c)F^{μν}J_μ
  double rc_mass_balance = 0.0;   // ∇_μ(ρ₀c²V^μ) + C ρ₀c² A_μ F_ν^{·μ} V^ν
  double lc_mass_balance = 0.0;   // (−g)^{−1/2} ∂_μ[(−g)^{1/2} ρ₀c² V^μ]
  double rc_mass_balance_as_printed = 0.0;  // with +C on the left, minus on the right
  double normalization = 0.0;     // |g(V,V) − 1|
  double flow_lorentz = 0.0;      // rc_transport_residual with dV/ds = V^μ∂_μV
};

/// Dust-independent parts use the model's EM stress-energy and current.
ExchangeResiduals exchange_identities(SpacetimeModel const& model, GeometrySnapshot const& snap,
                                      DustModel const& dust);
ExchangeResiduals exchange_identities(SpacetimeModel const& model, Point const& x,
                                      DustModel const& dust, DiffMode mode = DiffMode::kDual);

/// `s,x0,x1,x2,x3,V0,V1,V2,V3,norm_residual`, 17 significant digits.
void write_trajectory_csv(std::ostream& out, SpacetimeModel const& model,
                          std::vector<WorldlineState> const& samples);

}  // namespace rcgeom
