// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rcgeom/electromagnetism.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "rcgeom/error.hpp"

namespace rcgeom {

namespace {

Geometry<double> geometry_at(SpacetimeModel const& model, Point const& x, DiffMode mode) {
  return compute_geometry(sample_inputs(model, x, mode), model.constants());
}

}  // namespace

EMField field_strength(SpacetimeModel const& model, Point const& x, DiffMode mode) {
  auto geo = geometry_at(model, x, mode);
  EMField f;
  f.F_dd = make_antisymmetric(geo.F_dd, Variance::Down, Variance::Down);
  f.F_uu = to_tensor(geo.F_uu, Variance::Up, Variance::Up);
  f.F_mixed = to_tensor(geo.F_mixed, Variance::Down, Variance::Up);
  f.invariant_F2 = geo.F2;
  return f;
}

double homogeneous_residual(Arr3<double> const& dF) {
  double worst = 0.0;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      for (int l = 0; l < 4; ++l) {
        double s = dF[m][n][l] + dF[n][l][m] + dF[l][m][n];
        worst = std::max(worst, std::abs(s));
      }
    }
  }
  return worst;
}

double homogeneous_maxwell_residual(SpacetimeModel const& model, Point const& x, DiffMode mode) {
  return homogeneous_residual(geometry_at(model, x, mode).dF_dd);
}

double homogeneous_residual(TensorField const& F_dd, Point const& x, DiffMode mode) {
  if (F_dd.variance != std::vector<Variance>{Variance::Down, Variance::Down}) {
    throw ContractViolation("expected a covariant rank-2 field");
  }
  auto s = sample_tensor(F_dd, x, mode);
  Arr3<double> dF{};
  for (int a = 0; a < 4; ++a) {
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) dF[a][m][n] = s.partial[a](m, n);
    }
  }
  return homogeneous_residual(dF);
}

CurrentDensity current(SpacetimeModel const& model, Point const& x, DiffMode mode) {
  auto geo = geometry_at(model, x, mode);
  CurrentDensity j;
  for (int n = 0; n < 4; ++n) {
    j.J_up(n) = geo.J_up[n];
    j.connection_mismatch = std::max(j.connection_mismatch, std::abs(geo.J_up_rc[n] - geo.J_up_christoffel[n]));
  }
  for (int m = 0; m < 4; ++m) {
    double v = 0.0;
    for (int n = 0; n < 4; ++n) v += geo.g[m][n] * geo.J_up[n];
    j.J_down(m) = v;
  }
  if (j.connection_mismatch > 1e-6) {
    throw ConventionViolation(fmt::format(
        "full and Levi-Civita divergences of F differ by {:.3g}", j.connection_mismatch));
  }
  return j;
}

StressEnergyEM stress_energy(SpacetimeModel const& model, Point const& x, DiffMode mode) {
  auto geo = geometry_at(model, x, mode);
  StressEnergyEM t;
  t.T_dd = make_symmetric(geo.T_dd, Variance::Down, Variance::Down);
  return t;
}

Tensor chern_simons_density(SpacetimeModel const& model, Point const& x, DiffMode mode) {
  auto geo = geometry_at(model, x, mode);
  return to_tensor(geo.chern_simons, Variance::Down, Variance::Down, Variance::Down);
}

}  // namespace rcgeom
