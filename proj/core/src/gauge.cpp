// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rcgeom/gauge.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "rcgeom/dynamics.hpp"
#include "rcgeom/error.hpp"
#include "rcgeom/parallel.hpp"

namespace rcgeom {

namespace {

template <class A>
double max_diff(A const& a, A const& b) {
  if constexpr (std::is_same_v<A, double>) {
    return std::abs(a - b);
  } else {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, max_diff(a[i], b[i]));
    return m;
  }
}

template <class A>
double max_abs_of(A const& a) {
  if constexpr (std::is_same_v<A, double>) {
    return std::abs(a);
  } else {
    double m = 0.0;
    for (auto const& e : a) m = std::max(m, max_abs_of(e));
    return m;
  }
}

struct Routes {
  double route = 0.0;
  double opposite = 0.0;
};

Routes contorsion_routes(Geometry<double> const& before, Geometry<double> const& after,
                         FieldGradient const& phi, double C) {
  Routes r;
  double scale = std::max(1.0, max_abs_of(after.K));
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      for (int l = 0; l < 4; ++l) {
        double shift = C * phi.gradient[m] * before.F_mixed[n][l];
        r.route = std::max(r.route, std::abs(after.K[m][n][l] - (before.K[m][n][l] - shift)));
        r.opposite = std::max(r.opposite, std::abs(after.K[m][n][l] - (before.K[m][n][l] + shift)));
      }
    }
  }
  r.route /= scale;
  return r;
}

CurvatureShift shift_from(GeometrySnapshot const& before, Geometry<double> const& after,
                          FieldGradient const& phi, PhysicalConstants const& k) {
  CurvatureShift s;
  s.R_old = before.geo.scalar_rc;
  s.R_new = after.scalar_rc;
  double div = 0.0;
  for (int m = 0; m < 4; ++m) {
    div += phi.gradient[m] * before.geo.sqrt_neg_det_J[m] + phi.value * before.d_sqrt_neg_det_J[m][m];
  }
  s.divergence_term = 8.0 * std::numbers::pi * k.C() / k.c * div / before.geo.sqrt_neg_det;
  return s;
}

Vec4<double> probe_velocity(SpacetimeModel const& model, Point const& x) {
  Vec4<double> V{1.0, 0.01, 0.01, 0.01};
  if (velocity_norm(model, x, V) <= 0.0) V = {1.0, 0.0, 0.0, 0.0};
  return normalize_velocity(model, x, V);
}

}  // namespace

GaugeFunction GaugeFunction::parse(SpacetimeModel const& model, std::string const& src) {
  return GaugeFunction{rcgeom::parse(src, model.chart(), model.expression_parameters())};
}

SpacetimeModel transform_potential(SpacetimeModel const& model, GaugeFunction const& phi) {
  if (!phi.phi) throw ContractViolation("gauge function is empty");
  std::array<ExprPtr, 4> A;
  for (int m = 0; m < 4; ++m) {
    A[static_cast<std::size_t>(m)] = expr::add(model.A(m).expr(), differentiate(phi.phi, m));
  }
  return model.with_potential(A);
}

TransformedContorsion transformed_contorsion(SpacetimeModel const& model,
                                             GaugeFunction const& phi, Point const& x,
                                             DiffMode mode) {
  auto after_model = transform_potential(model, phi);
  auto before = compute_geometry(sample_inputs(model, x, mode), model.constants());
  auto after = compute_geometry(sample_inputs(after_model, x, mode), model.constants());
  auto dphi = field_gradient(ScalarField(phi.phi), x, mode, model.domain());
  auto routes = contorsion_routes(before, after, dphi, model.constants().C());
  TransformedContorsion out;
  out.recomputed.mixed = to_tensor(after.K, Variance::Down, Variance::Down, Variance::Up);
  out.recomputed.all_down = to_tensor(after.K_down, Variance::Down, Variance::Down, Variance::Down);
  out.shift = out.recomputed.mixed - to_tensor(before.K, Variance::Down, Variance::Down, Variance::Up);
  out.route_mismatch = routes.route;
  out.opposite_sign_mismatch = routes.opposite;
  if (out.route_mismatch > 1e-12 && mode == DiffMode::kDual) {
    throw ConventionViolation(
        fmt::format("transformed contorsion routes differ by {:.3g}", out.route_mismatch));
  }
  return out;
}

CurvatureShift gauge_curvature_shift(SpacetimeModel const& model, GaugeFunction const& phi,
                                     Point const& x, DiffMode mode) {
  auto after_model = transform_potential(model, phi);
  auto before = make_snapshot(model, x, mode, true);
  auto after = compute_geometry(sample_inputs(after_model, x, mode), model.constants());
  auto dphi = field_gradient(ScalarField(phi.phi), x, mode, model.domain());
  auto s = shift_from(before, after, dphi, model.constants());
  if (s.residual() > 1e-6) {
    throw ConventionViolation(fmt::format("scalar curvature shift misses by {:.3g}", s.residual()));
  }
  return s;
}

double einstein_residual(Geometry<double> const& geo, SpacetimeModel const& model) {
  bool coupled = model.source() == SourceKind::kEinsteinMaxwell;
  double k = 8.0 * std::numbers::pi * model.constants().C();
  double worst = 0.0;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      double r = geo.einstein_dd[m][n] - (coupled ? k * geo.T_dd[m][n] : 0.0);
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

GaugePointDeltas gauge_point(SpacetimeModel const& model, SpacetimeModel const& transformed,
                             GaugeFunction const& phi, Point const& x, DiffMode mode) {
  auto before = make_snapshot(model, x, mode, true);
  auto after = compute_geometry(sample_inputs(transformed, x, mode), model.constants());
  auto dphi = field_gradient(ScalarField(phi.phi), x, mode, model.domain());
  auto const& b = before.geo;
  GaugePointDeltas d;
  d.F = max_diff(b.F_dd, after.F_dd);
  d.J = max_diff(b.J_up, after.J_up);
  d.T = max_diff(b.T_dd, after.T_dd);
  d.einstein_residual = std::abs(einstein_residual(b, model) - einstein_residual(after, transformed));
  // Componentwise residual difference is tighter than comparing maxima.
  {
    double k = model.source() == SourceKind::kEinsteinMaxwell ? 8.0 * std::numbers::pi * model.constants().C() : 0.0;
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) {
        double r0 = b.einstein_dd[m][n] - k * b.T_dd[m][n];
        double r1 = after.einstein_dd[m][n] - k * after.T_dd[m][n];
        d.einstein_residual = std::max(d.einstein_residual, std::abs(r0 - r1));
      }
    }
  }
  WorldlineState st{x, probe_velocity(model, x), 0.0};
  auto r0 = lorentz_rhs(model, st, 1.0);
  auto r1 = lorentz_rhs(transformed, st, 1.0);
  d.lorentz_rhs = std::max(max_diff(r0.dx, r1.dx), max_diff(r0.dV, r1.dV));
  d.K = max_diff(b.K, after.K);
  d.torsion = max_diff(b.torsion, after.torsion);
  d.rc_curvature = max_diff(b.riemann_rc, after.riemann_rc);
  auto routes = contorsion_routes(b, after, dphi, model.constants().C());
  d.route_mismatch = routes.route;
  d.opposite_sign_mismatch = routes.opposite;
  d.curvature_shift_residual = shift_from(before, after, dphi, model.constants()).residual();
  return d;
}

std::vector<GaugeCheck> gauge_invariance_suite(SpacetimeModel const& model,
                                               GaugeFunction const& phi, DiffMode mode,
                                               int jobs) {
  auto transformed = transform_potential(model, phi);
  auto points = model.grid_points();
  auto per_point = parallel_map<GaugePointDeltas>(points.size(), jobs, [&](std::size_t i) {
    return gauge_point(model, transformed, phi, points[i], mode);
  });
  GaugePointDeltas worst;
  for (auto const& p : per_point) {
    worst.F = std::max(worst.F, p.F);
    worst.J = std::max(worst.J, p.J);
    worst.T = std::max(worst.T, p.T);
    worst.einstein_residual = std::max(worst.einstein_residual, p.einstein_residual);
    worst.lorentz_rhs = std::max(worst.lorentz_rhs, p.lorentz_rhs);
    worst.K = std::max(worst.K, p.K);
    worst.torsion = std::max(worst.torsion, p.torsion);
    worst.rc_curvature = std::max(worst.rc_curvature, p.rc_curvature);
    worst.route_mismatch = std::max(worst.route_mismatch, p.route_mismatch);
    worst.opposite_sign_mismatch = std::max(worst.opposite_sign_mismatch, p.opposite_sign_mismatch);
    worst.curvature_shift_residual = std::max(worst.curvature_shift_residual, p.curvature_shift_residual);
  }
  bool dual = mode == DiffMode::kDual;
  std::vector<GaugeCheck> out;
  auto check = [&](std::string id, double v, double tol) {
    out.push_back({std::move(id), v, tol, false, v <= tol});
  };
  auto info = [&](std::string id, double v) { out.push_back({std::move(id), v, 0.0, true, true}); };
  check("gauge.F_invariant", worst.F, dual ? 1e-12 : 1e-8);
  check("gauge.J_invariant", worst.J, dual ? 1e-10 : 1e-5);
  check("gauge.T_invariant", worst.T, dual ? 1e-10 : 1e-8);
  check("gauge.einstein_residual_invariant", worst.einstein_residual, dual ? 1e-10 : 1e-5);
  check("gauge.lorentz_rhs_invariant", worst.lorentz_rhs, 1e-12);
  check("gauge.contorsion_routes", worst.route_mismatch, dual ? 1e-12 : 1e-8);
  check("gauge.scalar_curvature_shift", worst.curvature_shift_residual, dual ? 1e-8 : 1e-5);
  info("gauge.K_delta", worst.K);
  info("gauge.torsion_delta", worst.torsion);
  info("gauge.rc_curvature_delta", worst.rc_curvature);
  info("gauge.contorsion_shift_opposite_sign", worst.opposite_sign_mismatch);
  return out;
}

}  // namespace rcgeom
