#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "rcgeom/error.hpp"
#include "rcgeom/harness.hpp"
#include "rcgeom/levi_civita.hpp"
#include "rcgeom/spacetime.hpp"

namespace rcgeom {
namespace {

constexpr char const* kGrids = "grid.t = 0:1:2\ngrid.x = 1:2:2\ngrid.y = 0:1:2\ngrid.z = 0:1:2\n";

std::filesystem::path data(char const* name) {
  return std::filesystem::path(RCGEOM_DATA_DIR) / "spacetimes" / name;
}

TEST(Catalog, NamesAndDefaults) {
  auto names = catalog_names();
  EXPECT_EQ(names.size(), 5u);
  auto rn = catalog_get("reissner-nordstrom");
  EXPECT_EQ(rn.params().at("M"), 1.0);
  EXPECT_EQ(rn.params().at("q"), 0.3);
  EXPECT_EQ(rn.constants().G, 1.0);
  EXPECT_EQ(rn.constants().c, 1.0);
  EXPECT_EQ(rn.constants().C(), 1.0);
  EXPECT_THROW(catalog_get("kerr"), LoadError);
}

TEST(Catalog, ConstantsOverride) {
  auto m = catalog_get("schwarzschild", {{"G", 2.0}, {"c", 2.0}});
  EXPECT_DOUBLE_EQ(m.constants().C(), 2.0 / 16.0);
  EXPECT_THROW(catalog_get("schwarzschild", {{"q", 1.0}}), LoadError);
}

TEST(Catalog, EveryModelValidOnItsGrid) {
  for (auto const& n : catalog_names()) {
    auto m = catalog_get(n);
    for (auto const& x : m.grid_points()) {
      auto g = metric_at(m, x);
      EXPECT_LE(inverse_residual(g), 1e-12) << n;
      EXPECT_LT(g.det_g, 0.0);
      auto [pos, neg] = signature_counts(g.g_dd);
      EXPECT_EQ(pos, 1);
      EXPECT_EQ(neg, 3);
    }
  }
}

TEST(Catalog, DefaultGridShapes) {
  auto rn = catalog_get("reissner-nordstrom");
  auto g = rn.default_grid();
  EXPECT_EQ(g[1].count, 8);
  EXPECT_EQ(g[1].start, 3.0);
  EXPECT_EQ(g[1].stop, 10.0);
  EXPECT_EQ(g[2].count, 4);
  EXPECT_NEAR(g[2].start, 0.3, 0);
  EXPECT_NEAR(g[2].stop, std::numbers::pi - 0.3, 1e-15);
  EXPECT_EQ(rn.grid_points().size(), 2u * 8u * 4u * 2u);
  // First coordinate varies slowest.
  auto pts = rn.grid_points();
  EXPECT_EQ(pts[0][0], pts[1][0]);
  EXPECT_NE(pts[0][3], pts[1][3]);
}

TEST(Catalog, SchwarzschildIsChargelessReissnerNordstrom) {
  auto s = catalog_get("schwarzschild");
  auto rn = catalog_get("reissner-nordstrom", {{"q", 0.0}});
  for (auto const& x : s.grid_points()) {
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) EXPECT_NEAR(s.g(m, n)(x), rn.g(m, n)(x), 1e-14);
    }
  }
}

TEST(Catalog, PlaneWaveIsNullAndSourceFree) {
  auto m = catalog_get("em-plane-wave");
  for (auto const& x : m.grid_points()) {
    auto snap = make_snapshot(m, x);
    EXPECT_LE(std::abs(snap.geo.F2), 1e-15);
    for (double j : snap.geo.J_up) EXPECT_LE(std::abs(j), 1e-15);
  }
}

TEST(GridAxis, Parsing) {
  auto a = parse_grid_axis("3:10:8");
  EXPECT_EQ(a.start, 3.0);
  EXPECT_EQ(a.stop, 10.0);
  EXPECT_EQ(a.count, 8);
  EXPECT_EQ(a.values().size(), 8u);
  EXPECT_EQ(a.values().back(), 10.0);
  EXPECT_EQ(parse_grid_axis("2:2:1").values(), std::vector<double>{2.0});
  EXPECT_THROW(parse_grid_axis("1:2"), LoadError);
  EXPECT_THROW(parse_grid_axis("1:2:0"), LoadError);
  EXPECT_THROW(parse_grid_axis("a:2:3"), LoadError);
}

TEST(FileLoader, MinkowskiRedeclaredMatchesCatalog) {
  auto def = parse_spacetime_definition(R"(# comment
name = flat
coords = t, x, y, z
g[0][0] = "1"
g[1][1] = "-1"
g[2][2] = "-1"
g[3][3] = "-1"
grid.t = 0:1:3
grid.x = 1:3:3
grid.y = -1:1:3
grid.z = -1:1:3
)");
  SpacetimeModel file(def);
  file.validate_on_grid();
  auto cat = catalog_get("minkowski");
  for (auto const& x : cat.grid_points()) {
    auto a = make_snapshot(file, x).geo;
    auto b = make_snapshot(cat, x).geo;
    EXPECT_EQ(a.g, b.g);
    EXPECT_EQ(a.lc, b.lc);
    EXPECT_EQ(a.riemann_rc, b.riemann_rc);
  }
}

TEST(FileLoader, SymmetricCompletionAndDefaults) {
  auto def = parse_spacetime_definition(R"(name = tilted
coords = t, x, y, z
g[0][0] = "1"
g[0][1] = "0.1"
g[1][1] = "-1"
g[2][2] = "-1"
g[3][3] = "-1"
grid.t = 0:0:1
grid.x = 0:0:1
grid.y = 0:0:1
grid.z = 0:0:1
)");
  SpacetimeModel m(def);
  Point x{};
  EXPECT_EQ(m.g(1, 0)(x), 0.1);
  EXPECT_EQ(m.g(0, 2)(x), 0.0);
  EXPECT_FALSE(m.has_potential());
}

TEST(FileLoader, ReissnerNordstromFileMatchesCatalog) {
  auto file = load_spacetime_file(data("reissner_nordstrom.st"));
  auto cat = catalog_get("reissner-nordstrom");
  SuiteSpec spec;
  auto a = run_suite(file, spec);
  auto b = run_suite(cat, spec);
  int compared = 0;
  for (auto const& ca : a.checks) {
    for (auto const& cb : b.checks) {
      if (ca.id != cb.id) continue;
      ++compared;
      EXPECT_NEAR(ca.max_residual, cb.max_residual, 1e-12) << ca.id;
      EXPECT_EQ(ca.pass, cb.pass) << ca.id;
    }
  }
  EXPECT_GT(compared, 30);
}

TEST(FileLoader, WrongSignatureNamesTheGridPoint) {
  try {
    load_spacetime_file(data("bad_signature.st"));
    FAIL() << "expected SignatureError";
  } catch (SignatureError const& e) {
    EXPECT_NE(std::string(e.what()).find("(0, 1, 0, 0)"), std::string::npos) << e.what();
  }
}

TEST(FileLoader, ErrorsCarryLineNumbers) {
  try {
    parse_spacetime_definition(std::string("name = x\ncoords = t, x, y, z\ng[0][0] = \"1 +\"\n") + kGrids);
    FAIL();
  } catch (LoadError const& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_spacetime_definition("name = x\nbogus = 3\n");
    FAIL();
  } catch (LoadError const& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_spacetime_definition("name = x\nname = y\n"), LoadError);
}

TEST(FileLoader, TrailingCommentsOutsideQuotes) {
  auto def = parse_spacetime_definition(std::string(R"(name = c   # trailing
coords = t, x, y, z
g[0][0] = "1"  # time
g[1][1] = "-1"
g[2][2] = "-1"
g[3][3] = "-1"
)") + kGrids);
  EXPECT_EQ(def.name, "c");
  EXPECT_EQ(def.g[0][0], "1");
}

TEST(FileLoader, MissingRequiredKeys) {
  EXPECT_THROW(parse_spacetime_definition("coords = t, x, y, z\ng[0][0] = \"1\"\n"), LoadError);
  EXPECT_THROW(parse_spacetime_definition("name = a\ng[0][0] = \"1\"\n"), LoadError);
  // No grid for z.
  EXPECT_THROW(parse_spacetime_definition(R"(name = a
coords = t, x, y, z
g[0][0] = "1"
grid.t = 0:1:2
grid.x = 0:1:2
grid.y = 0:1:2
)"),
               LoadError);
}

TEST(FileLoader, UnknownIdentifierInExpression) {
  try {
    parse_spacetime_definition(std::string("name = a\ncoords = t, x, y, z\ng[0][0] = \"1 + w\"\n") + kGrids);
    FAIL();
  } catch (LoadError const& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("w"), std::string::npos);
  }
}

TEST(FileLoader, MissingFile) {
  EXPECT_THROW(load_spacetime_file("/nonexistent/file.st"), LoadError);
}

TEST(Models, ConcurrentSnapshotsAgree) {
  auto m = catalog_get("reissner-nordstrom");
  auto pts = m.grid_points();
  SuiteSpec spec;
  spec.jobs = 1;
  auto one = report_json(run_suite(m, spec));
  spec.jobs = 8;
  auto many = report_json(run_suite(m, spec));
  auto strip = [](std::string s) { return s.substr(0, s.find("\"wall_ms\"")); };
  EXPECT_EQ(strip(one), strip(many));
}

}  // namespace
}  // namespace rcgeom
