#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "rcgeom/dynamics.hpp"
#include "rcgeom/error.hpp"
#include "rcgeom/fixtures.hpp"

namespace rcgeom {
namespace {

using State = std::array<double, 8>;  // x^0..x^3, V^0..V^3

// Geodesic right-hand side for Schwarzschild (G = c = 1), written out by hand.
State schwarzschild_geodesic(State const& y, double M) {
  double r = y[1], th = y[2];
  double f = 1.0 - 2.0 * M / r;
  double s = std::sin(th), c = std::cos(th);
  double Vt = y[4], Vr = y[5], Vth = y[6], Vph = y[7];
  State d{};
  for (int i = 0; i < 4; ++i) d[i] = y[4 + i];
  d[4] = -2.0 * M / (r * r * f) * Vt * Vr;
  d[5] = -(M * f / (r * r)) * Vt * Vt + M / (r * r * f) * Vr * Vr + r * f * Vth * Vth +
         r * f * s * s * Vph * Vph;
  d[6] = -2.0 / r * Vr * Vth + s * c * Vph * Vph;
  d[7] = -2.0 / r * Vr * Vph - 2.0 * c / s * Vth * Vph;
  return d;
}

State rk4(State y, double h, long n, double M) {
  auto axpy = [](State const& a, double k, State const& b) {
    State o;
    for (int i = 0; i < 8; ++i) o[i] = a[i] + k * b[i];
    return o;
  };
  for (long i = 0; i < n; ++i) {
    auto k1 = schwarzschild_geodesic(y, M);
    auto k2 = schwarzschild_geodesic(axpy(y, h / 2, k1), M);
    auto k3 = schwarzschild_geodesic(axpy(y, h / 2, k2), M);
    auto k4 = schwarzschild_geodesic(axpy(y, h, k3), M);
    for (int j = 0; j < 8; ++j) y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  }
  return y;
}

TEST(LorentzRhs, ChargeAtRestInConstantField) {
  auto m = catalog_get("minkowski-constant-e");
  WorldlineState st{{0.0, 2.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}};
  auto d = lorentz_rhs(m, st, 0.5);
  // dV^1/ds = −k F_0^{·1} = kE.
  EXPECT_DOUBLE_EQ(d.dV[1], 0.5);
  EXPECT_EQ(d.dV[0], 0.0);
  EXPECT_EQ(d.dx[0], 1.0);
}

TEST(LorentzRhs, OffDomainThrows) {
  auto m = catalog_get("schwarzschild");
  WorldlineState st{{0.0, 1.0, 1.0, 0.0}, {1.0, 0.0, 0.0, 0.0}};
  EXPECT_THROW(lorentz_rhs(m, st, 0.0), DomainError);
}

TEST(Velocity, NormalizeAndReject) {
  auto m = catalog_get("schwarzschild");
  Point x{0.0, 4.0, 1.0, 0.0};
  auto V = normalize_velocity(m, x, {2.0, 0.1, 0.0, 0.0});
  EXPECT_NEAR(velocity_norm(m, x, V), 1.0, 1e-15);
  EXPECT_THROW(normalize_velocity(m, x, {0.0, 1.0, 0.0, 0.0}), ContractViolation);
  EXPECT_THROW(normalize_velocity(m, x, {0.0, 0.0, 0.0, 0.0}), ContractViolation);
}

TEST(Worldline, OffShellStartIsRejected) {
  auto m = catalog_get("minkowski");
  WorldlineState st{{0.0, 1.0, 0.0, 0.0}, {1.0, 0.5, 0.0, 0.0}};
  EXPECT_THROW(integrate_worldline(m, st, 0.0, {}), ContractViolation);
}

TEST(Worldline, HyperbolicMotion) {
  auto m = catalog_get("minkowski-constant-e");
  double k = 0.5, a = 0.5;  // a = kE
  WorldlineState init{{0.0, 2.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}};
  IntegratorConfig cfg;
  cfg.ds = 1e-3;
  cfg.steps = 2000;
  cfg.save_every = 100;
  auto r = integrate_worldline(m, init, k, cfg);
  ASSERT_FALSE(r.error) << *r.error;
  ASSERT_EQ(r.samples.size(), 21u);
  auto const& last = r.samples.back();
  EXPECT_NEAR(last.s, 2.0, 1e-12);
  EXPECT_NEAR(last.V[0], std::cosh(1.0), 1e-9);
  EXPECT_NEAR(last.V[1], std::sinh(1.0), 1e-9);
  EXPECT_NEAR(last.x[0], std::sinh(1.0) / a, 1e-9);
  EXPECT_NEAR(last.x[1], 2.0 + (std::cosh(1.0) - 1.0) / a, 1e-9);
  EXPECT_LE(r.max_norm_drift, 1e-8);

  auto cf = fixtures::closed_form(m, init, k);
  ASSERT_TRUE(cf.has_value());
  auto exact = (*cf)(2.0);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(exact.x[i], last.x[i], 1e-9);
    EXPECT_NEAR(exact.V[i], last.V[i], 1e-9);
  }
}

TEST(Worldline, InertialLine) {
  auto m = catalog_get("minkowski");
  auto V = normalize_velocity(m, {0.0, 1.0, 0.0, 0.0}, {1.0, 0.3, -0.2, 0.1});
  WorldlineState init{{0.0, 1.0, 0.0, 0.0}, V};
  IntegratorConfig cfg;
  cfg.ds = 1e-2;
  cfg.steps = 1000;
  auto r = integrate_worldline(m, init, 0.7, cfg);  // field-free, k is irrelevant
  auto exact = (*fixtures::closed_form(m, init, 0.7))(10.0);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(r.samples.back().x[i], exact.x[i], 1e-12);
  EXPECT_EQ(r.samples.back().V, V);
}

TEST(Worldline, MatchesIndependentGeodesicIntegrator) {
  auto m = catalog_get("schwarzschild");
  Point x0{0.0, 10.0, std::numbers::pi / 2 - 0.1, 0.0};
  auto V = normalize_velocity(m, x0, {1.0, -0.05, 0.01, 0.03});
  IntegratorConfig cfg;
  cfg.ds = 0.05;
  cfg.steps = 400;
  cfg.save_every = 400;
  auto r = integrate_worldline(m, {x0, V}, 0.0, cfg);
  ASSERT_FALSE(r.error);
  State y{x0[0], x0[1], x0[2], x0[3], V[0], V[1], V[2], V[3]};
  auto ref = rk4(y, cfg.ds, cfg.steps, 1.0);
  auto const& last = r.samples.back();
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(last.x[i], ref[i], 1e-10) << i;
    EXPECT_NEAR(last.V[i], ref[4 + i], 1e-10) << i;
  }
  EXPECT_LE(r.max_norm_drift, 1e-8);
}

TEST(Worldline, ChargeRatioDoesNotMatterWithoutField) {
  auto m = catalog_get("schwarzschild");
  auto init = fixtures::circular_orbit(1.0, 8.0);
  IntegratorConfig cfg;
  cfg.steps = 200;
  cfg.ds = 0.05;
  auto a = integrate_worldline(m, init, 0.0, cfg);
  auto b = integrate_worldline(m, init, 3.0, cfg);
  EXPECT_EQ(a.samples.back().x, b.samples.back().x);
}

TEST(Worldline, CircularOrbitClosesAfterOnePeriod) {
  auto m = catalog_get("schwarzschild");
  double M = 1.0, R = 8.0;
  auto init = fixtures::circular_orbit(M, R);
  EXPECT_NEAR(velocity_norm(m, init.x, init.V), 1.0, 1e-15);
  double period = fixtures::circular_orbit_period(M, R);
  // Proper period 2π/Ω_τ with Ω_τ = dφ/dτ = √(M/r³)/√(1 − 3M/r).
  EXPECT_NEAR(period, 2 * std::numbers::pi / (std::sqrt(M / (R * R * R)) / std::sqrt(1 - 3 * M / R)),
              1e-12);
  IntegratorConfig cfg;
  cfg.steps = static_cast<long>(std::ceil(period / 0.01));
  cfg.ds = period / static_cast<double>(cfg.steps);
  cfg.save_every = 10;
  auto r = integrate_worldline(m, init, 0.0, cfg);
  ASSERT_FALSE(r.error);
  for (auto const& s : r.samples) EXPECT_NEAR(s.x[1], R, 1e-6);
  auto const& last = r.samples.back();
  EXPECT_NEAR(last.x[3], init.x[3] + 2 * std::numbers::pi, 1e-6);
  EXPECT_NEAR(last.V[3], init.V[3], 1e-8);
}

TEST(Worldline, AdaptiveAgreesWithFixedStep) {
  auto m = catalog_get("minkowski-constant-e");
  WorldlineState init{{0.0, 2.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}};
  IntegratorConfig cfg;
  cfg.method = IntegratorMethod::kRk45Adaptive;
  cfg.ds = 1e-2;
  cfg.steps = 200;
  auto r = integrate_worldline(m, init, 0.5, cfg);
  ASSERT_FALSE(r.error);
  auto const& last = r.samples.back();
  auto exact = (*fixtures::closed_form(m, init, 0.5))(last.s);
  EXPECT_NEAR(last.V[0], exact.V[0], 1e-9);
  EXPECT_NEAR(last.x[1], exact.x[1], 1e-9);
}

TEST(Worldline, DomainExitStopsTheRun) {
  auto m = catalog_get("schwarzschild");
  Point x0{0.0, 3.0, 1.0, 0.0};
  auto V = normalize_velocity(m, x0, {1.0, -0.2, 0.0, 0.0});
  IntegratorConfig cfg;
  cfg.ds = 0.05;
  cfg.steps = 10000;
  auto r = integrate_worldline(m, {x0, V}, 0.0, cfg);
  ASSERT_TRUE(r.error.has_value());
  ASSERT_FALSE(r.samples.empty());
  EXPECT_GT(r.samples.back().x[1], 2.0);
  EXPECT_LT(r.samples.back().s, 10000 * 0.05);
}

TEST(Worldline, RenormalizationKeepsTheShell) {
  auto m = catalog_get("schwarzschild");
  auto init = fixtures::circular_orbit(1.0, 6.5);
  IntegratorConfig cfg;
  cfg.ds = 0.5;  // coarse on purpose
  cfg.steps = 400;
  cfg.renormalize_every = 1;
  auto r = integrate_worldline(m, init, 0.0, cfg);
  ASSERT_FALSE(r.error);
  EXPECT_NEAR(velocity_norm(m, r.samples.back().x, r.samples.back().V), 1.0, 1e-14);
}

TEST(Trajectory, CsvLayout) {
  auto m = catalog_get("minkowski");
  std::vector<WorldlineState> s{{{0.0, 1.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}, 0.0},
                                {{0.1, 1.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}, 0.1}};
  std::ostringstream out;
  write_trajectory_csv(out, m, s);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "s,x0,x1,x2,x3,V0,V1,V2,V3,norm_residual");
  std::getline(in, line);
  EXPECT_EQ(line, "0,0,1,0,0,1,0,0,0,0");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 4), "0.10");  // 17 significant digits
}

TEST(Transport, LorentzSolutionsSatisfyTheRcForm) {
  for (auto const& name : {"minkowski-constant-e", "reissner-nordstrom", "em-plane-wave"}) {
    auto m = catalog_get(name);
    for (auto const& x : m.grid_points()) {
      Vec4<double> V = normalize_velocity(m, x, {1.0, 0.01, 0.01, 0.01});
      EXPECT_LE(rc_transport_residual(m, {x, V}, 0.7), 1e-13) << name;
    }
  }
}

TEST(Transport, PrintedSignLeavesAResidual) {
  // Doubling the coupling term leaves 2C(A·V)F_δ^{·ν}V^δ: with A·V = −2 and
  // F_0^{·1} = −1 that is 4 in the x direction.
  auto m = catalog_get("minkowski-constant-e");
  WorldlineState st{{0.0, 2.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}};
  auto dV = lorentz_rhs(m, st, 0.5).dV;
  EXPECT_NEAR(rc_transport_residual_as_printed(m, st, 0.5, dV), 4.0, 1e-14);
  EXPECT_LE(rc_transport_residual(m, st, 0.5, dV), 1e-15);
}

TEST(Exchange, DefaultDustSatisfiesEveryIdentity) {
  std::vector<SpacetimeModel> models;
  for (auto const& n : catalog_names()) models.push_back(catalog_get(n));
  models.push_back(fixtures::charge_ball());
  for (auto const& m : models) {
    auto dust = fixtures::default_dust(m);
    ASSERT_TRUE(dust.has_value()) << m.name();
    for (auto const& x : m.grid_points()) {
      if (!dust->support.contains(x)) continue;
      auto e = exchange_identities(m, x, *dust);
      EXPECT_LE(e.stress_pair, 1e-14) << m.name();
      EXPECT_LE(e.em_divergence, 1e-12) << m.name();
      EXPECT_LE(e.rc_mass_balance, 1e-10) << m.name();
      EXPECT_LE(e.lc_mass_balance, 1e-10) << m.name();
      EXPECT_LE(e.normalization, 1e-12) << m.name();
      EXPECT_LE(e.flow_lorentz, 1e-10) << m.name();
    }
  }
}

TEST(Exchange, NonGeodesicFlowIsFlagged) {
  // Static dust in Schwarzschild is held up by nothing: the flow fails the
  // transport identity while still being normalized.
  auto m = catalog_get("schwarzschild");
  auto dust = DustModel::parse(m, "1", "0", {"1/sqrt(1 - 2*M/r)", "0", "0", "0"});
  auto e = exchange_identities(m, Point{0.0, 4.0, 1.0, 0.0}, dust);
  EXPECT_LE(e.normalization, 1e-14);
  // a^r = Γ_tt^r (V^t)² = M/r²
  EXPECT_NEAR(e.flow_lorentz, 1.0 / 16.0, 1e-14);
}

}  // namespace
}  // namespace rcgeom
