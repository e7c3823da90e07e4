#include <cmath>

#include <gtest/gtest.h>

#include "rcgeom/levi_civita.hpp"

namespace rcgeom {
namespace {

using V = Variance;

// Metric components as a TensorField, filling the lower triangle.
TensorField metric_field(SpacetimeModel const& m) {
  std::vector<std::string> comps(16);
  auto const& g = m.definition().g;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      auto const& s = a <= b ? g[a][b] : g[b][a];
      comps[a * 4 + b] = s.empty() ? "0" : s;
    }
  }
  return TensorField::parse(m, {V::Down, V::Down}, comps);
}

TEST(Christoffel, SchwarzschildRadialAcceleration) {
  auto m = catalog_get("schwarzschild");
  Point x{0.0, 4.0, std::numbers::pi / 2, 0.0};
  auto c = christoffel(m, x);
  // Γ_tt^r = (M/r²)(1 − 2M/r)
  EXPECT_NEAR(c.gamma(0, 0, 1), 0.03125, 1e-15);
  // Γ_tr^t = M/(r² f)
  EXPECT_NEAR(c.gamma(0, 1, 0), 1.0 / (16.0 * 0.5), 1e-15);
  EXPECT_NEAR(c.gamma(1, 0, 0), c.gamma(0, 1, 0), 0);
}

TEST(Christoffel, FlatSphericalChart) {
  auto def = catalog_definition("schwarzschild");
  def.params["M"] = 0.0;
  SpacetimeModel m(def);
  double r = 3.0, th = 0.7;
  Point x{0.0, r, th, 0.4};
  auto c = christoffel(m, x);
  EXPECT_NEAR(c.gamma(2, 2, 1), -r, 1e-14);
  EXPECT_NEAR(c.gamma(1, 2, 2), 1.0 / r, 1e-14);
  EXPECT_NEAR(c.gamma(3, 3, 1), -r * std::sin(th) * std::sin(th), 1e-14);
  EXPECT_NEAR(c.gamma(2, 3, 3), std::cos(th) / std::sin(th), 1e-14);
  auto curv = lc_curvature(m, x);
  EXPECT_LE(max_abs(curv.riemann), 1e-14);
}

TEST(Christoffel, FiniteDifferencesAgree) {
  auto m = catalog_get("reissner-nordstrom");
  for (auto const& x : m.grid_points()) {
    auto a = christoffel(m, x, DiffMode::kDual);
    auto b = christoffel(m, x, DiffMode::kFd);
    // Central-difference truncation near r = 3, where 1/f bends hardest.
    EXPECT_LE(max_abs_diff(a.gamma, b.gamma), 1e-6);
  }
}

TEST(Curvature, SchwarzschildIsRicciFlat) {
  auto m = catalog_get("schwarzschild");
  for (auto const& x : m.grid_points()) {
    auto c = lc_curvature(m, x);
    EXPECT_LE(max_abs(c.ricci), 1e-12);
    EXPECT_GT(max_abs(c.riemann), 1e-3);  // tidal curvature survives
  }
}

TEST(Curvature, SchwarzschildTidalComponent) {
  // In (−,+,+,+), R_{trtr} = −2M/r³ and g^{tt} = −1/f, so R^t_{rtr} = 2M/(r³ f).
  // One raised index makes this independent of the overall metric sign.
  auto m = catalog_get("schwarzschild");
  double r = 5.0;
  double f = 1.0 - 2.0 / r;
  auto c = lc_curvature(m, Point{0.0, r, 1.0, 0.0});
  // Layout [μ][ν][λ][χ] = R_{μνλ}^χ = R^χ_{λμν}.
  EXPECT_NEAR(c.riemann(0, 1, 1, 0), 2.0 / (r * r * r * f), 1e-12);
}

TEST(Curvature, ReissnerNordstromEinsteinTensor) {
  auto m = catalog_get("reissner-nordstrom");
  double r = 4.0, q = 0.3, th = 1.1;
  double f = 1.0 - 2.0 / r + q * q / (r * r);
  auto c = lc_curvature(m, Point{0.0, r, th, 0.0});
  EXPECT_NEAR(c.scalar, 0.0, 1e-14);  // traceless source
  EXPECT_NEAR(c.einstein(0, 0), q * q * f / std::pow(r, 4), 1e-14);
  EXPECT_NEAR(c.einstein(1, 1), -q * q / (f * std::pow(r, 4)), 1e-14);
  EXPECT_NEAR(c.einstein(2, 2), q * q / (r * r), 1e-14);
  EXPECT_NEAR(c.einstein(3, 3), q * q * std::sin(th) * std::sin(th) / (r * r), 1e-14);
}

TEST(Curvature, RiemannSymmetries) {
  auto m = catalog_get("reissner-nordstrom");
  for (auto const& x : m.grid_points()) {
    auto c = lc_curvature(m, x);
    auto low = lower_index(c.riemann, 3, metric_at(m, x));
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        for (int l = 0; l < 4; ++l) {
          for (int k = 0; k < 4; ++k) {
            EXPECT_NEAR(c.riemann(a, b, l, k), -c.riemann(b, a, l, k), 1e-14);
            EXPECT_NEAR(low(a, b, l, k), -low(a, b, k, l), 1e-12);
            EXPECT_NEAR(low(a, b, l, k), low(l, k, a, b), 1e-12);
            EXPECT_NEAR(c.riemann(a, b, l, k) + c.riemann(b, l, a, k) + c.riemann(l, a, b, k), 0.0,
                        1e-13);
          }
        }
      }
    }
  }
}

TEST(CovariantDerivative, MetricIsParallel) {
  for (auto const& name : catalog_names()) {
    auto m = catalog_get(name);
    auto g = metric_field(m);
    for (auto const& x : m.grid_points()) {
      EXPECT_LE(max_abs(lc_covariant_derivative(m, x, g)), 1e-12) << name;
    }
  }
}

TEST(CovariantDerivative, NonParallelTensorIsNotFlagged) {
  auto m = catalog_get("schwarzschild");
  auto t = TensorField::parse(m, {V::Up}, {"0", "r", "0", "0"});
  Point x{0.0, 4.0, 1.0, 0.0};
  auto d = lc_covariant_derivative(m, x, t);
  // ∇_r V^r = 1 + Γ_rr^r r, Γ_rr^r = −M/(r² f)
  EXPECT_NEAR(d(1, 1), 1.0 - 4.0 / (16.0 * 0.5), 1e-14);
}

TEST(Divergence, DeterminantAndChristoffelFormsAgree) {
  auto m = catalog_get("reissner-nordstrom");
  auto X = TensorField::parse(m, {V::Up, V::Up},
                              {"0", "r*sin(theta)", "t/r", "0",             //
                               "-r*sin(theta)", "0", "cos(theta)", "r^2",  //
                               "-t/r", "-cos(theta)", "0", "phi",          //
                               "0", "-r^2", "-phi", "0"});
  for (auto const& x : m.grid_points()) {
    for (auto mode : {DiffMode::kDual, DiffMode::kFd}) {
      auto d = lc_divergence_antisym2(m, x, X, mode);
      double tol = mode == DiffMode::kDual ? 1e-12 : 1e-7;
      EXPECT_LE(max_abs_diff(d.determinant_form, d.christoffel_form), tol);
    }
  }
}

TEST(Bianchi, EinsteinTensorIsDivergenceFree) {
  for (auto const& name : {"reissner-nordstrom", "schwarzschild"}) {
    auto m = catalog_get(name);
    for (auto const& x : m.grid_points()) {
      auto dual = einstein_divergence(make_snapshot(m, x));
      for (double v : dual) EXPECT_LE(std::abs(v), 1e-12) << name;
      auto fd = einstein_divergence(make_snapshot(m, x, DiffMode::kFd));
      for (double v : fd) EXPECT_LE(std::abs(v), 1e-5) << name;
    }
  }
}

TEST(Bianchi, GenericMetricIsDivergenceFree) {
  // A non-vacuum, non-symmetric metric so the identity is not trivially zero.
  auto def = parse_spacetime_definition(R"st(name = lumpy
coords = t, x, y, z
g[0][0] = "1 + 0.1*sin(x)*cos(y)"
g[0][1] = "0.05*t*z"
g[1][1] = "-1 - 0.1*x^2"
g[2][2] = "-exp(0.1*t)"
g[2][3] = "0.02*x*y"
g[3][3] = "-1 - 0.05*cos(z)"
grid.t = 0:0.5:2
grid.x = 0:1:3
grid.y = 0:1:2
grid.z = 0:1:2
)st");
  SpacetimeModel m(def);
  m.validate_on_grid();
  for (auto const& x : m.grid_points()) {
    auto s = make_snapshot(m, x);
    EXPECT_GT(max_abs(to_tensor(s.geo.einstein_dd, V::Down, V::Down)), 1e-4);
    for (double v : einstein_divergence(s)) EXPECT_LE(std::abs(v), 1e-12);
  }
}

}  // namespace
}  // namespace rcgeom
