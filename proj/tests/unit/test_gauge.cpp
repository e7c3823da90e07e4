#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rcgeom/electromagnetism.hpp"
#include "rcgeom/fixtures.hpp"
#include "rcgeom/gauge.hpp"

namespace rcgeom {
namespace {

constexpr double kPi = std::numbers::pi;

GaugeCheck const& find(std::vector<GaugeCheck> const& v, std::string const& id) {
  for (auto const& c : v) {
    if (c.id == id) return c;
  }
  throw std::runtime_error("no check " + id);
}

TEST(Transform, PotentialGainsTheGradient) {
  auto m = catalog_get("reissner-nordstrom");
  auto phi = GaugeFunction::parse(m, "0.1*t*r");
  auto t = transform_potential(m, phi);
  Point x{0.5, 4.0, 1.0, 0.0};
  EXPECT_NEAR(t.A(0)(x), 0.3 / 4.0 + 0.4, 1e-15);
  EXPECT_NEAR(t.A(1)(x), 0.05, 1e-15);
  EXPECT_EQ(t.A(2)(x), 0.0);
  EXPECT_EQ(t.g(1, 1)(x), m.g(1, 1)(x));
  EXPECT_EQ(t.name(), m.name());
}

TEST(Transform, ParseErrorsAreReported) {
  auto m = catalog_get("reissner-nordstrom");
  EXPECT_THROW(GaugeFunction::parse(m, "t*x"), ParseError);  // no x in this chart
}

TEST(Transform, ConstantGaugeChangesNothing) {
  auto m = catalog_get("reissner-nordstrom");
  auto phi = GaugeFunction::parse(m, "3.5");
  auto t = transform_potential(m, phi);
  for (auto const& x : m.grid_points()) {
    auto d = gauge_point(m, t, phi, x, DiffMode::kDual);
    EXPECT_EQ(d.F, 0.0);
    EXPECT_EQ(d.K, 0.0);
    EXPECT_EQ(d.torsion, 0.0);
    EXPECT_EQ(d.rc_curvature, 0.0);
    EXPECT_EQ(d.route_mismatch, 0.0);
  }
}

TEST(Contorsion, ShiftFollowsTheDefinitionByHand) {
  // φ = sin t on the constant field: ΔK_{0ν}^λ = −C cos t F_ν^{·λ}, so at
  // t = 0 ΔK_{01}^0 = ΔK_{00}^1 = +1.
  auto m = catalog_get("minkowski-constant-e");
  auto phi = GaugeFunction::parse(m, "sin(t)");
  Point x{0.0, 2.0, 0.0, 0.0};
  auto tc = transformed_contorsion(m, phi, x);
  EXPECT_NEAR(tc.shift(0, 1, 0), 1.0, 1e-15);
  EXPECT_NEAR(tc.shift(0, 0, 1), 1.0, 1e-15);
  EXPECT_NEAR(tc.recomputed.mixed(0, 1, 0), -1.0, 1e-15);
  EXPECT_LE(tc.route_mismatch, 1e-15);
  // The opposite sign misses by twice the shift.
  EXPECT_NEAR(tc.opposite_sign_mismatch, 2.0, 1e-15);
}

TEST(Contorsion, ShiftInFiniteDifferenceMode) {
  auto m = catalog_get("reissner-nordstrom");
  auto phi = GaugeFunction::parse(m, "0.1*t*r");
  for (auto const& x : m.grid_points()) {
    auto tc = transformed_contorsion(m, phi, x, DiffMode::kFd);
    EXPECT_LE(tc.route_mismatch, 1e-8);
    EXPECT_GT(max_abs(tc.shift), 1e-6);
  }
}

TEST(Curvature, SourceFreeScalarIsUnchanged) {
  auto m = catalog_get("reissner-nordstrom");
  auto phi = GaugeFunction::parse(m, "0.1*t*r");
  for (auto const& x : m.grid_points()) {
    auto s = gauge_curvature_shift(m, phi, x);
    EXPECT_NEAR(s.divergence_term, 0.0, 1e-15);
    EXPECT_LE(s.residual(), 1e-14);
  }
}

TEST(Curvature, ChargedRegionShiftsByTheDivergenceTerm) {
  // φ = t, J = (ρ, 0, 0, 0): (8πC/c) ∂_t(t ρ) = 8πρ.
  auto m = fixtures::charge_ball(0.1);
  auto phi = GaugeFunction::parse(m, "t");
  for (auto const& x : m.grid_points()) {
    for (auto mode : {DiffMode::kDual, DiffMode::kFd}) {
      auto s = gauge_curvature_shift(m, phi, x, mode);
      double tol = mode == DiffMode::kDual ? 1e-12 : 1e-6;
      EXPECT_NEAR(s.divergence_term, 8 * kPi * 0.1, tol);
      EXPECT_NEAR(s.R_new - s.R_old, 8 * kPi * 0.1, tol);
    }
  }
}

TEST(Curvature, SpatialGaugeOnChargedRegion) {
  // φ = x y: ∂_μ(φ J^μ) = ∂_t(x y ρ) = 0 even though φ J ≠ 0.
  auto m = fixtures::charge_ball(0.1);
  auto phi = GaugeFunction::parse(m, "x*y");
  auto s = gauge_curvature_shift(m, phi, Point{0.3, 1.0, 0.5, 0.2});
  EXPECT_NEAR(s.divergence_term, 0.0, 1e-14);
  EXPECT_LE(s.residual(), 1e-13);
}

TEST(Composition, TwoStepsEqualOneCombinedStep) {
  auto m = catalog_get("reissner-nordstrom");
  auto p1 = GaugeFunction::parse(m, "0.1*t*r");
  auto p2 = GaugeFunction::parse(m, "0.05*sin(theta)*phi");
  auto both = GaugeFunction::parse(m, "0.1*t*r + 0.05*sin(theta)*phi");
  auto two = transform_potential(transform_potential(m, p1), p2);
  auto one = transform_potential(m, both);
  for (auto const& x : m.grid_points()) {
    auto a = contorsion_from_potential(two, x);
    auto b = contorsion_from_potential(one, x);
    EXPECT_LE(max_abs_diff(a.mixed, b.mixed), 1e-15);
    auto s1 = transformed_contorsion(m, p1, x).shift;
    auto s2 = transformed_contorsion(transform_potential(m, p1), p2, x).shift;
    auto s12 = transformed_contorsion(m, both, x).shift;
    EXPECT_LE(max_abs_diff(s1 + s2, s12), 1e-15);
  }
}

TEST(Suite, ReissnerNordstromWithSeveralGauges) {
  auto m = catalog_get("reissner-nordstrom");
  for (char const* src : {"0.1*t*r", "0.01*r^2*cos(theta)", "sin(t)*exp(-r/10) + phi"}) {
    auto phi = GaugeFunction::parse(m, src);
    for (auto mode : {DiffMode::kDual, DiffMode::kFd}) {
      auto checks = gauge_invariance_suite(m, phi, mode, 4);
      int enforced = 0, info = 0;
      for (auto const& c : checks) {
        if (c.informational) {
          ++info;
          EXPECT_TRUE(c.pass);
        } else {
          ++enforced;
          EXPECT_TRUE(c.pass) << src << " " << c.id << " " << c.max_value << " > " << c.tolerance;
        }
      }
      EXPECT_EQ(enforced, 7);
      EXPECT_EQ(info, 4);
      EXPECT_GT(find(checks, "gauge.K_delta").max_value, 1e-6) << src;
      EXPECT_GT(find(checks, "gauge.torsion_delta").max_value, 1e-6) << src;
      EXPECT_GT(find(checks, "gauge.contorsion_shift_opposite_sign").max_value, 1e-6) << src;
    }
  }
}

TEST(Suite, EveryModelIsGaugeInvariantUnderItsDefault) {
  std::vector<SpacetimeModel> models;
  for (auto const& n : catalog_names()) models.push_back(catalog_get(n));
  models.push_back(fixtures::charge_ball());
  for (auto const& m : models) {
    auto phi = GaugeFunction::parse(m, fixtures::default_gauge_function(m));
    for (auto const& c : gauge_invariance_suite(m, phi)) {
      EXPECT_TRUE(c.pass) << m.name() << " " << c.id << " " << c.max_value;
    }
  }
}

TEST(Suite, JobsDoNotChangeResults) {
  auto m = catalog_get("reissner-nordstrom");
  auto phi = GaugeFunction::parse(m, "0.1*t*r");
  auto a = gauge_invariance_suite(m, phi, DiffMode::kDual, 1);
  auto b = gauge_invariance_suite(m, phi, DiffMode::kDual, 8);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    EXPECT_EQ(a[i].max_value, b[i].max_value);
  }
}

TEST(EinsteinResidual, SourcedAndTestFieldModels) {
  auto rn = catalog_get("reissner-nordstrom");
  auto ce = catalog_get("minkowski-constant-e");
  for (auto const& x : rn.grid_points()) {
    EXPECT_LE(einstein_residual(make_snapshot(rn, x).geo, rn), 1e-14);
  }
  // The constant field's stress-energy is not fed back into flat space.
  for (auto const& x : ce.grid_points()) {
    EXPECT_EQ(einstein_residual(make_snapshot(ce, x).geo, ce), 0.0);
  }
}

}  // namespace
}  // namespace rcgeom
