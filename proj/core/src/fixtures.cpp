// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rcgeom/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rcgeom::fixtures {

namespace {

bool is_flat_cartesian(SpacetimeModel const& m) {
  auto const& n = m.name();
  return n == "minkowski" || n == "minkowski-constant-e" || n == "em-plane-wave" ||
         n == "charge-ball";
}

double param_or(SpacetimeModel const& m, std::string const& key, double fallback) {
  auto it = m.params().find(key);
  return it == m.params().end() ? fallback : it->second;
}

}  // namespace

ModelDefinition charge_ball_definition(double rho) {
  ModelDefinition d = catalog_definition("minkowski");
  d.name = "charge-ball";
  d.params["rho"] = rho;
  d.A[0] = "-(2*pi/3)*rho*(x^2 + y^2 + z^2)";
  d.source = SourceKind::kTestField;
  return d;
}

SpacetimeModel charge_ball(double rho) {
  SpacetimeModel m(charge_ball_definition(rho));
  m.validate_on_grid();
  return m;
}

std::optional<Vec4<double>> expected_current(SpacetimeModel const& model, Point const&) {
  auto const names = catalog_names();
  if (std::find(names.begin(), names.end(), model.name()) != names.end()) return Vec4<double>{};
  if (model.name() == "charge-ball") {
    return Vec4<double>{model.constants().c * param_or(model, "rho", 0.0), 0.0, 0.0, 0.0};
  }
  return std::nullopt;
}

std::optional<DustModel> default_dust(SpacetimeModel const& model) {
  auto const& n = model.name();
  if (n == "minkowski" || n == "em-plane-wave" || n == "charge-ball") {
    // Neutral dust at rest: geodesic, and nothing couples to it.
    return DustModel::parse(model, "1", "0", {"1", "0", "0", "0"});
  }
  if (n == "minkowski-constant-e") {
    // Rindler congruence: each worldline has proper acceleration 1/ρ, which
    // the field supplies when ρ_q/(ρ₀c²) = 1/(Eρ).
    return DustModel::parse(model, "1", "c^2/(E*sqrt(x^2 - t^2))",
                            {"x/sqrt(x^2 - t^2)", "t/sqrt(x^2 - t^2)", "0", "0"},
                            "x^2 - t^2");
  }
  if (n == "schwarzschild") {
    // Marginally bound radial infall; r^(-3/2) makes the flux divergence-free.
    return DustModel::parse(model, "r^(-3/2)", "0",
                            {"1/(1 - 2*G*M/(c^2*r))", "-sqrt(2*G*M/(c^2*r))", "0", "0"});
  }
  if (n == "reissner-nordstrom") {
    std::string f = "(1 - 2*G*M/(c^2*r) + G*q^2/(c^4*r^2))";
    return DustModel::parse(model, "1/(r^2*sqrt(1 - " + f + "))", "0",
                            {"1/" + f, "-sqrt(1 - " + f + ")", "0", "0"}, "1 - " + f);
  }
  return std::nullopt;
}

std::string default_gauge_function(SpacetimeModel const& model) {
  auto const& c = model.chart().names();
  return "0.1*" + c[0] + "*" + c[1] + " + 0.05*sin(" + c[0] + ")";
}

WorldlineState circular_orbit(double M, double r) {
  double root = std::sqrt(1.0 - 3.0 * M / r);
  WorldlineState s;
  s.x = {0.0, r, std::numbers::pi / 2, 0.0};
  s.V = {1.0 / root, 0.0, 0.0, std::sqrt(M / (r * r * r)) / root};
  return s;
}

double circular_orbit_period(double M, double r) {
  return 2.0 * std::numbers::pi / circular_orbit(M, r).V[3];
}

std::optional<ClosedForm> closed_form(SpacetimeModel const& model, WorldlineState const& init,
                                      double charge_ratio) {
  if (!is_flat_cartesian(model)) return std::nullopt;
  if (model.name() == "minkowski" || charge_ratio == 0.0) {
    return ClosedForm([init](double s) {
      WorldlineState out = init;
      for (int i = 0; i < 4; ++i) out.x[i] = init.x[i] + (s - init.s) * init.V[i];
      out.s = s;
      return out;
    });
  }
  if (model.name() != "minkowski-constant-e") return std::nullopt;
  if (init.V != Vec4<double>{1.0, 0.0, 0.0, 0.0}) return std::nullopt;
  double a = charge_ratio * param_or(model, "E", 1.0);
  if (a == 0.0) return std::nullopt;
  return ClosedForm([init, a](double s) {
    double u = a * (s - init.s);
    WorldlineState out = init;
    out.s = s;
    out.V = {std::cosh(u), std::sinh(u), 0.0, 0.0};
    out.x[0] = init.x[0] + std::sinh(u) / a;
    out.x[1] = init.x[1] + (std::cosh(u) - 1.0) / a;
    return out;
  });
}

}  // namespace rcgeom::fixtures
