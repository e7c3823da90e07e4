// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rcgeom/spacetime.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <regex>
#include <sstream>

#include <fmt/format.h>

#include "rcgeom/error.hpp"
#include "rcgeom/tensor.hpp"

namespace rcgeom {

namespace {

int packed(int mu, int nu) { return sym_index(mu, nu); }

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_number(std::string const& text, std::size_t line) {
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw LoadError("expected a number, got '" + text + "'", line);
  }
  return v;
}

std::string point_text(Point const& x) {
  return fmt::format("({:.17g}, {:.17g}, {:.17g}, {:.17g})", x[0], x[1], x[2], x[3]);
}

}  // namespace

std::vector<double> GridAxis::values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    out.push_back(start);
    return out;
  }
  for (int i = 0; i < count; ++i) {
    out.push_back(start + (stop - start) * static_cast<double>(i) / (count - 1));
  }
  return out;
}

GridAxis parse_grid_axis(std::string_view text) {
  std::string s = trim(text);
  auto first = s.find(':');
  auto second = first == std::string::npos ? first : s.find(':', first + 1);
  if (second == std::string::npos) {
    throw LoadError("grid must be start:stop:count, got '" + s + "'");
  }
  GridAxis a;
  a.start = parse_number(trim(s.substr(0, first)), 0);
  a.stop = parse_number(trim(s.substr(first + 1, second - first - 1)), 0);
  double n = parse_number(trim(s.substr(second + 1)), 0);
  if (n < 1 || n != std::floor(n) || n > 1e6) {
    throw LoadError("grid count must be a positive integer, got '" + s + "'");
  }
  a.count = static_cast<int>(n);
  return a;
}

//---------------------------------------------------------------------------//
// SpacetimeModel
//---------------------------------------------------------------------------//

SpacetimeModel::SpacetimeModel(ModelDefinition def)
    : def_(std::move(def)), chart_(def_.coords) {
  if (!(def_.constants.G > 0.0) || !(def_.constants.c > 0.0)) {
    throw LoadError("G and c must be positive");
  }
  ParameterMap params = expression_parameters();
  auto field = [&](std::string const& src) {
    if (trim(src).empty()) return ScalarField();
    return ScalarField(parse(src, chart_, params));
  };
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu; nu < 4; ++nu) {
      g_[static_cast<std::size_t>(packed(mu, nu))] = field(def_.g[mu][nu]);
    }
    A_[static_cast<std::size_t>(mu)] = field(def_.A[mu]);
  }
  if (!trim(def_.domain).empty()) {
    domain_ = DomainPredicate(parse(def_.domain, chart_, params));
  }
  for (int i = 0; i < 4; ++i) {
    if (!def_.grid[i]) {
      throw LoadError("missing required key grid." + def_.coords[i]);
    }
    grid_[i] = *def_.grid[i];
  }
}

ScalarField const& SpacetimeModel::g(int mu, int nu) const {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3) throw ContractViolation("metric index out of range");
  return g_[static_cast<std::size_t>(packed(mu, nu))];
}

bool SpacetimeModel::has_potential() const noexcept {
  for (auto const& a : A_) {
    if (!a.is_zero()) return true;
  }
  return false;
}

ParameterMap SpacetimeModel::expression_parameters() const {
  ParameterMap p = def_.params;
  p["G"] = def_.constants.G;
  p["c"] = def_.constants.c;
  p["pi"] = std::numbers::pi;
  return p;
}

std::vector<Point> SpacetimeModel::grid_points() const { return grid_points(grid_); }

std::vector<Point> SpacetimeModel::grid_points(std::array<GridAxis, 4> const& axes) {
  std::array<std::vector<double>, 4> v;
  for (int i = 0; i < 4; ++i) v[i] = axes[i].values();
  std::vector<Point> out;
  out.reserve(v[0].size() * v[1].size() * v[2].size() * v[3].size());
  for (double a : v[0]) {
    for (double b : v[1]) {
      for (double c : v[2]) {
        for (double d : v[3]) out.push_back({a, b, c, d});
      }
    }
  }
  return out;
}

SpacetimeModel SpacetimeModel::with_potential(std::array<ExprPtr, 4> A) const {
  SpacetimeModel m = *this;
  for (int mu = 0; mu < 4; ++mu) {
    m.A_[static_cast<std::size_t>(mu)] = ScalarField(A[static_cast<std::size_t>(mu)]);
    m.def_.A[mu] = print(*A[static_cast<std::size_t>(mu)], chart_);
  }
  return m;
}

SpacetimeModel SpacetimeModel::with_grid(std::array<GridAxis, 4> grid) const {
  SpacetimeModel m = *this;
  m.grid_ = grid;
  for (int i = 0; i < 4; ++i) m.def_.grid[i] = grid[i];
  return m;
}

void SpacetimeModel::validate_on(std::vector<Point> const& points) const {
  for (auto const& x : points) {
    if (!domain_.contains(x)) {
      throw SignatureError("grid point " + point_text(x) + " lies outside the domain");
    }
    try {
      Tensor g_dd({Variance::Down, Variance::Down});
      for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) g_dd(mu, nu) = g(mu, nu)(x);
      }
      make_validated_metric(g_dd);
      for (int mu = 0; mu < 4; ++mu) (void)A(mu)(x);
    } catch (SignatureError const& e) {
      throw SignatureError("metric invalid at grid point " + point_text(x) + ": " + e.what());
    } catch (Error const& e) {
      throw SignatureError("model invalid at grid point " + point_text(x) + ": " + e.what());
    }
  }
}

//---------------------------------------------------------------------------//
// Catalog
//---------------------------------------------------------------------------//

namespace {

ModelDefinition cartesian(std::string name) {
  ModelDefinition d;
  d.name = std::move(name);
  d.coords = {"t", "x", "y", "z"};
  d.g[0][0] = "1";
  d.g[1][1] = "-1";
  d.g[2][2] = "-1";
  d.g[3][3] = "-1";
  d.grid[0] = GridAxis{0.0, 1.0, 3};
  d.grid[1] = GridAxis{1.0, 3.0, 3};
  d.grid[2] = GridAxis{-1.0, 1.0, 3};
  d.grid[3] = GridAxis{-1.0, 1.0, 3};
  return d;
}

ModelDefinition static_spherical(std::string name, std::string const& f) {
  ModelDefinition d;
  d.name = std::move(name);
  d.coords = {"t", "r", "theta", "phi"};
  d.g[0][0] = f;
  d.g[1][1] = "-1/(" + f + ")";
  d.g[2][2] = "-r^2";
  d.g[3][3] = "-r^2*sin(theta)^2";
  d.domain = "r*(" + f + ")";
  d.grid[0] = GridAxis{0.0, 1.0, 2};
  d.grid[1] = GridAxis{3.0, 10.0, 8};
  d.grid[2] = GridAxis{0.3, std::numbers::pi - 0.3, 4};
  d.grid[3] = GridAxis{0.5, 2.5, 2};
  return d;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"minkowski", "minkowski-constant-e", "schwarzschild", "reissner-nordstrom",
          "em-plane-wave"};
}

ModelDefinition catalog_definition(std::string_view name) {
  if (name == "minkowski") return cartesian("minkowski");
  if (name == "minkowski-constant-e") {
    auto d = cartesian("minkowski-constant-e");
    d.params["E"] = 1.0;
    d.A[0] = "-E*x";
    d.source = SourceKind::kTestField;
    return d;
  }
  if (name == "schwarzschild") {
    auto d = static_spherical("schwarzschild", "1 - 2*G*M/(c^2*r)");
    d.params["M"] = 1.0;
    return d;
  }
  if (name == "reissner-nordstrom") {
    auto d = static_spherical("reissner-nordstrom", "1 - 2*G*M/(c^2*r) + G*q^2/(c^4*r^2)");
    d.params["M"] = 1.0;
    d.params["q"] = 0.3;
    d.A[0] = "q/r";
    return d;
  }
  if (name == "em-plane-wave") {
    auto d = cartesian("em-plane-wave");
    d.params["a"] = 0.1;
    d.params["k"] = 1.0;
    d.A[2] = "a*cos(k*(t - x))";
    d.source = SourceKind::kTestField;
    return d;
  }
  throw LoadError("unknown catalog spacetime '" + std::string(name) + "'");
}

void apply_overrides(ModelDefinition& def, ParameterMap const& overrides) {
  for (auto const& [k, v] : overrides) {
    if (k == "G") {
      def.constants.G = v;
    } else if (k == "c") {
      def.constants.c = v;
    } else if (auto it = def.params.find(k); it != def.params.end()) {
      it->second = v;
    } else {
      throw LoadError("spacetime '" + def.name + "' has no parameter '" + k + "'");
    }
  }
}

SpacetimeModel catalog_get(std::string_view name, ParameterMap const& overrides) {
  ModelDefinition d = catalog_definition(name);
  apply_overrides(d, overrides);
  SpacetimeModel m(std::move(d));
  m.validate_on_grid();
  return m;
}

//---------------------------------------------------------------------------//
// File format
//---------------------------------------------------------------------------//

ModelDefinition parse_spacetime_definition(std::string_view text) {
  static std::regex const kKeyValue(R"(^([A-Za-z_][A-Za-z0-9_.\[\]]*(?:\s+[A-Za-z_][A-Za-z0-9_]*)?)\s*=\s*(.*)$)");
  static std::regex const kMetric(R"(^g\[([0-3])\]\[([0-3])\]$)");
  static std::regex const kPotential(R"(^A\[([0-3])\]$)");
  static std::regex const kParam(R"(^param\s+([A-Za-z_][A-Za-z0-9_]*)$)");
  static std::regex const kGrid(R"(^grid\.([A-Za-z_][A-Za-z0-9_]*)$)");

  ModelDefinition d;
  std::map<std::string, std::size_t> seen;
  std::vector<std::pair<std::string, std::size_t>> expressions;
  std::map<std::string, std::pair<GridAxis, std::size_t>> grids;
  bool any_metric = false;

  auto quoted = [](std::string const& v, std::size_t line) {
    if (v.size() < 2 || v.front() != '"' || v.back() != '"') {
      throw LoadError("expected a quoted expression", line);
    }
    return v.substr(1, v.size() - 2);
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    // '#' starts a comment unless it sits inside a quoted expression.
    bool in_quotes = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') in_quotes = !in_quotes;
      if (raw[i] == '#' && !in_quotes) {
        raw.resize(i);
        break;
      }
    }
    std::string s = trim(raw);
    if (s.empty()) continue;
    std::smatch m;
    if (!std::regex_match(s, m, kKeyValue)) {
      throw LoadError("expected 'key = value'", line);
    }
    std::string key = trim(m[1].str());
    std::string value = trim(m[2].str());
    if (!seen.emplace(key, line).second) {
      throw LoadError("duplicate key '" + key + "'", line);
    }
    std::smatch k;
    if (key == "name") {
      if (!std::regex_match(value, std::regex(R"([A-Za-z_][A-Za-z0-9_-]*)"))) {
        throw LoadError("invalid name '" + value + "'", line);
      }
      d.name = value;
    } else if (key == "coords") {
      std::array<std::string, 4> names;
      std::istringstream parts(value);
      std::string part;
      int n = 0;
      while (std::getline(parts, part, ',')) {
        if (n == 4) throw LoadError("coords must list exactly 4 names", line);
        names[n++] = trim(part);
      }
      if (n != 4) throw LoadError("coords must list exactly 4 names", line);
      try {
        ChartSpec check(names);
      } catch (ContractViolation const& e) {
        throw LoadError(e.what(), line);
      }
      d.coords = names;
    } else if (key == "G") {
      d.constants.G = parse_number(value, line);
    } else if (key == "c") {
      d.constants.c = parse_number(value, line);
    } else if (key == "domain") {
      d.domain = quoted(value, line);
      expressions.emplace_back(d.domain, line);
    } else if (key == "source") {
      if (value == "einstein-maxwell") {
        d.source = SourceKind::kEinsteinMaxwell;
      } else if (value == "test-field") {
        d.source = SourceKind::kTestField;
      } else {
        throw LoadError("source must be einstein-maxwell or test-field", line);
      }
    } else if (std::regex_match(key, k, kParam)) {
      std::string pname = k[1].str();
      if (pname == "G" || pname == "c" || pname == "pi") {
        throw LoadError("parameter '" + pname + "' is reserved", line);
      }
      d.params[pname] = parse_number(value, line);
    } else if (std::regex_match(key, k, kMetric)) {
      int i = std::stoi(k[1].str());
      int j = std::stoi(k[2].str());
      if (i > j) std::swap(i, j);
      std::string slot = fmt::format("g[{}][{}]", i, j);
      if (slot != key && !seen.emplace(slot, line).second) {
        throw LoadError("duplicate key '" + slot + "'", line);
      }
      d.g[i][j] = quoted(value, line);
      expressions.emplace_back(d.g[i][j], line);
      any_metric = true;
    } else if (std::regex_match(key, k, kPotential)) {
      int i = std::stoi(k[1].str());
      d.A[i] = quoted(value, line);
      expressions.emplace_back(d.A[i], line);
    } else if (std::regex_match(key, k, kGrid)) {
      try {
        grids[k[1].str()] = {parse_grid_axis(value), line};
      } catch (LoadError const& e) {
        throw LoadError(e.what(), line);
      }
    } else {
      throw LoadError("unknown key '" + key + "'", line);
    }
  }

  if (d.name.empty()) throw LoadError("missing required key 'name'");
  if (!seen.count("coords")) throw LoadError("missing required key 'coords'");
  if (!any_metric) throw LoadError("missing required key 'g[i][j]'");

  for (auto const& [coord, entry] : grids) {
    int idx = -1;
    for (int i = 0; i < 4; ++i) {
      if (d.coords[i] == coord) idx = i;
    }
    if (idx < 0) throw LoadError("grid for unknown coordinate '" + coord + "'", entry.second);
    d.grid[idx] = entry.first;
  }
  for (int i = 0; i < 4; ++i) {
    if (!d.grid[i]) throw LoadError("missing required key 'grid." + d.coords[i] + "'");
  }

  // Trial parse so that expression errors carry their line.
  ChartSpec chart(d.coords);
  ParameterMap params = d.params;
  params["G"] = d.constants.G;
  params["c"] = d.constants.c;
  params["pi"] = std::numbers::pi;
  for (auto const& [src, at] : expressions) {
    try {
      (void)parse(src, chart, params);
    } catch (ParseError const& e) {
      throw LoadError(e.what(), at);
    }
  }
  return d;
}

ModelDefinition read_spacetime_definition(std::filesystem::path const& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open spacetime file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spacetime_definition(buf.str());
}

SpacetimeModel load_spacetime_file(std::filesystem::path const& path,
                                   ParameterMap const& overrides) {
  ModelDefinition d = read_spacetime_definition(path);
  apply_overrides(d, overrides);
  SpacetimeModel m(std::move(d));
  m.validate_on_grid();
  return m;
}

SpacetimeModel resolve_spacetime(std::string const& name_or_path, ParameterMap const& overrides) {
  for (auto const& n : catalog_names()) {
    if (n == name_or_path) return catalog_get(n, overrides);
  }
  if (std::filesystem::exists(name_or_path)) return load_spacetime_file(name_or_path, overrides);
  throw LoadError("'" + name_or_path + "' is neither a catalog spacetime nor a readable file");
}

}  // namespace rcgeom
