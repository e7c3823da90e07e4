#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rcgeom/electromagnetism.hpp"
#include "rcgeom/fixtures.hpp"

namespace rcgeom {
namespace {

using V = Variance;
constexpr double kPi = std::numbers::pi;

TEST(FieldStrength, ConstantField) {
  auto m = catalog_get("minkowski-constant-e");
  auto f = field_strength(m, Point{0.5, 2.0, 0.0, 1.0});
  EXPECT_DOUBLE_EQ(f.F_dd(1, 0), -1.0);
  EXPECT_DOUBLE_EQ(f.F_dd(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(f.F_uu(0, 1), -1.0);  // g^{00} g^{11} F_{01}
  EXPECT_DOUBLE_EQ(f.F_mixed(0, 1), -1.0);
  EXPECT_DOUBLE_EQ(f.F_mixed(1, 0), -1.0);
  EXPECT_DOUBLE_EQ(f.invariant_F2, -2.0);
}

TEST(FieldStrength, CoulombField) {
  // A_t = q/r: F_{rt} = ∂_r A_t = −q/r².
  auto m = catalog_get("reissner-nordstrom");
  auto f = field_strength(m, Point{0.0, 2.0, 1.0, 0.0});
  EXPECT_NEAR(f.F_dd(1, 0), -0.075, 1e-16);
  EXPECT_NEAR(f.F_dd(0, 1), 0.075, 1e-16);
  // g^{tt} g^{rr} = −1 for this family, so F² = −2 F_{tr}².
  EXPECT_NEAR(f.invariant_F2, -2.0 * 0.075 * 0.075, 1e-16);
}

TEST(FieldStrength, FiniteDifferencesAgree) {
  for (auto const& name : catalog_names()) {
    auto m = catalog_get(name);
    for (auto const& x : m.grid_points()) {
      auto a = field_strength(m, x, DiffMode::kDual);
      auto b = field_strength(m, x, DiffMode::kFd);
      EXPECT_LE(max_abs_diff(a.F_dd, b.F_dd), 1e-8) << name;
    }
  }
}

TEST(Homogeneous, HoldsForPotentialsOnCatalog) {
  for (auto const& name : catalog_names()) {
    auto m = catalog_get(name);
    for (auto const& x : m.grid_points()) {
      EXPECT_LE(homogeneous_maxwell_residual(m, x), 1e-14) << name;
      EXPECT_LE(homogeneous_maxwell_residual(m, x, DiffMode::kFd), 1e-8) << name;
    }
  }
}

TEST(Homogeneous, CorruptedFieldIsDetected) {
  // F_{12} = t is not closed: ∂_0 F_{12} = 1 survives the cyclic sum.
  auto m = catalog_get("minkowski");
  auto F = TensorField::parse(m, {V::Down, V::Down},
                              {"0", "0", "0", "0",   //
                               "0", "0", "t", "0",   //
                               "0", "-t", "0", "0",  //
                               "0", "0", "0", "0"});
  EXPECT_NEAR(homogeneous_residual(F, Point{0.3, 1.0, 0.0, 0.0}), 1.0, 1e-15);
  EXPECT_NEAR(homogeneous_residual(F, Point{0.3, 1.0, 0.0, 0.0}, DiffMode::kFd), 1.0, 1e-8);
}

TEST(Current, SourceFreeCatalog) {
  for (auto const& name : catalog_names()) {
    auto m = catalog_get(name);
    for (auto const& x : m.grid_points()) {
      auto j = current(m, x);
      EXPECT_LE(max_abs(j.J_up), 1e-14) << name;
      EXPECT_LE(j.connection_mismatch, 1e-14) << name;
    }
  }
}

TEST(Current, UniformChargeDensity) {
  auto m = fixtures::charge_ball(0.1);
  for (auto const& x : m.grid_points()) {
    auto j = current(m, x);
    EXPECT_NEAR(j.J_up(0), 0.1, 1e-14);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(j.J_up(i), 0.0, 1e-14);
    EXPECT_NEAR(j.J_down(0), 0.1, 1e-14);
    EXPECT_LE(j.connection_mismatch, 1e-14);
    auto expected = fixtures::expected_current(m, x);
    ASSERT_TRUE(expected.has_value());
    EXPECT_NEAR((*expected)[0], 0.1, 0);
  }
}

TEST(Current, ScalesWithLightSpeed) {
  auto def = fixtures::charge_ball_definition(0.1);
  def.constants.c = 3.0;
  SpacetimeModel m(def);
  auto j = current(m, Point{0.0, 1.0, 0.0, 0.0});
  EXPECT_NEAR(j.J_up(0), 0.3, 1e-14);
}

TEST(Current, IsConservedForCurvedGenericPotential) {
  // ∂_ν(√−g J^ν) = 0 for any potential, by antisymmetry of F.
  auto def = catalog_definition("reissner-nordstrom");
  def.A = {"q/r + t*sin(theta)", "r*t^2", "cos(phi)*r", "r^2*sin(theta)*t"};
  SpacetimeModel m(def);
  for (auto const& x : m.grid_points()) {
    auto s = make_snapshot(m, x);
    EXPECT_GT(std::abs(s.geo.J_up[0]) + std::abs(s.geo.J_up[1]), 1e-3);
    EXPECT_LE(std::abs(current_conservation(s)), 1e-12);
    for (int n = 0; n < 4; ++n) {
      EXPECT_NEAR(s.geo.J_up[n], s.geo.J_up_christoffel[n], 1e-12);
      EXPECT_NEAR(s.geo.J_up[n], s.geo.J_up_rc[n], 1e-12);
    }
  }
}

TEST(StressEnergy, ConstantFieldEnergyDensity) {
  auto m = catalog_get("minkowski-constant-e");
  auto t = stress_energy(m, Point{0.0, 2.0, 0.0, 0.0});
  double E = 1.0;
  EXPECT_NEAR(t.T_dd(0, 0), E * E / (8 * kPi), 1e-15);
  EXPECT_NEAR(t.T_dd(1, 1), -E * E / (8 * kPi), 1e-15);  // tension along the field
  EXPECT_NEAR(t.T_dd(2, 2), E * E / (8 * kPi), 1e-15);
  EXPECT_NEAR(t.T_dd(0, 1), 0.0, 1e-15);
}

TEST(StressEnergy, SymmetricAndTraceless) {
  for (auto const& name : catalog_names()) {
    auto m = catalog_get(name);
    for (auto const& x : m.grid_points()) {
      auto t = stress_energy(m, x);
      auto g = metric_at(m, x);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) EXPECT_NEAR(t.T_dd(a, b), t.T_dd(b, a), 1e-16);
      }
      EXPECT_NEAR(contract(raise_index(t.T_dd, 0, g), 0, 1)(), 0.0, 1e-15) << name;
    }
  }
}

TEST(StressEnergy, PlaneWaveIsNullDust) {
  // T_{μν} ∝ k_μ k_ν with k = (1, −1, 0, 0): T_00 = −T_01 = T_11.
  auto m = catalog_get("em-plane-wave");
  for (auto const& x : m.grid_points()) {
    auto t = stress_energy(m, x);
    EXPECT_NEAR(t.T_dd(0, 0), t.T_dd(1, 1), 1e-16);
    EXPECT_NEAR(t.T_dd(0, 0), -t.T_dd(0, 1), 1e-16);
    EXPECT_GE(t.T_dd(0, 0), 0.0);
    EXPECT_NEAR(field_strength(m, x).invariant_F2, 0.0, 1e-16);
  }
}

TEST(ChernSimons, VanishesForSingleComponentPotential) {
  auto m = catalog_get("minkowski-constant-e");
  for (auto const& x : m.grid_points()) {
    EXPECT_EQ(max_abs(chern_simons_density(m, x)), 0.0);
  }
}

TEST(ChernSimons, TotallyAntisymmetricForGenericPotential) {
  auto def = catalog_definition("minkowski");
  def.A = {"y", "z*t", "x", "t*y"};
  SpacetimeModel m(def);
  Point x{0.5, 1.0, 2.0, -1.0};
  auto cs = chern_simons_density(m, x);
  EXPECT_GT(max_abs(cs), 0.1);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        EXPECT_NEAR(cs(a, b, c), -cs(b, a, c), 1e-15);
        EXPECT_NEAR(cs(a, b, c), cs(b, c, a), 1e-15);
      }
    }
  }
  // (1/6)(A_0F_{12} + A_2F_{01} + A_1F_{20}) by hand.
  auto f = field_strength(m, x);
  double A0 = 2.0, A1 = -0.5, A2 = 1.0;
  double hand = (A0 * f.F_dd(1, 2) + A2 * f.F_dd(0, 1) + A1 * f.F_dd(2, 0)) / 6.0;
  EXPECT_NEAR(cs(0, 1, 2), hand, 1e-15);
}

}  // namespace
}  // namespace rcgeom
