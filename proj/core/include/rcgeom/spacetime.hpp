// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcgeom/expr.hpp"
#include "rcgeom/field.hpp"

namespace rcgeom {

struct PhysicalConstants {
  double G = 1.0;
  double c = 1.0;
  /// Coupling G/c^4, always recomputed.
  double C() const noexcept { return G / (c * c * c * c); }
};

/// Whether the potential sources the metric (exact Einstein-Maxwell
/// solution) or is a test field on a fixed vacuum background.
enum class SourceKind { kEinsteinMaxwell, kTestField };

/// Evenly spaced samples start..stop inclusive; count 1 means {start}.
struct GridAxis {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  std::vector<double> values() const;
};

/// Parses "a:b:n". Throws LoadError on malformed text or n < 1.
GridAxis parse_grid_axis(std::string_view text);

/// Textual definition of a model. Both the catalog and the file loader
/// produce one; parameters can be overridden before building.
struct ModelDefinition {
  std::string name;
  std::array<std::string, 4> coords;
  ParameterMap params;  // user parameters, in declaration order irrelevant
  PhysicalConstants constants;
  std::array<std::array<std::string, 4>, 4> g;  // upper triangle used; "" = 0
  std::array<std::string, 4> A;
  std::string domain;  // "" = everywhere
  std::array<std::optional<GridAxis>, 4> grid;
  SourceKind source = SourceKind::kEinsteinMaxwell;
};

class SpacetimeModel {
 public:
  /// Parses every expression. G, c and pi are visible to expressions as
  /// parameters. Does not validate the metric; see validate_on_grid().
  explicit SpacetimeModel(ModelDefinition def);

  std::string const& name() const noexcept { return def_.name; }
  ChartSpec const& chart() const noexcept { return chart_; }
  PhysicalConstants const& constants() const noexcept { return def_.constants; }
  ParameterMap const& params() const noexcept { return def_.params; }
  SourceKind source() const noexcept { return def_.source; }
  ModelDefinition const& definition() const noexcept { return def_; }
  DomainPredicate const& domain() const noexcept { return domain_; }

  ScalarField const& g(int mu, int nu) const;
  ScalarField const& A(int mu) const { return A_.at(static_cast<std::size_t>(mu)); }
  bool has_potential() const noexcept;

  /// Parameter table as seen by expressions (user params + G, c, pi).
  ParameterMap expression_parameters() const;

  std::array<GridAxis, 4> const& default_grid() const noexcept { return grid_; }
  /// Cartesian product of the grid axes, first coordinate slowest.
  std::vector<Point> grid_points() const;
  static std::vector<Point> grid_points(std::array<GridAxis, 4> const& axes);

  /// Same model with A replaced (metric, constants and grid kept).
  SpacetimeModel with_potential(std::array<ExprPtr, 4> A) const;
  SpacetimeModel with_grid(std::array<GridAxis, 4> grid) const;

  /// Metric invariants at every point; SignatureError names the first
  /// failing point. Also rejects points outside the domain and non-finite A.
  void validate_on(std::vector<Point> const& points) const;
  void validate_on_grid() const { validate_on(grid_points()); }

 private:
  ModelDefinition def_;
  ChartSpec chart_;
  std::array<ScalarField, 10> g_;
  std::array<ScalarField, 4> A_;
  DomainPredicate domain_;
  std::array<GridAxis, 4> grid_;
};

/// Catalog entry names, in listing order.
std::vector<std::string> catalog_names();
/// Definition with defaults. Throws LoadError for unknown names.
ModelDefinition catalog_definition(std::string_view name);
/// catalog_definition + overrides, built and validated.
SpacetimeModel catalog_get(std::string_view name, ParameterMap const& overrides = {});

/// Parses the line-oriented spacetime file format.
ModelDefinition parse_spacetime_definition(std::string_view text);
/// Reads and parses a spacetime file without building the model.
ModelDefinition read_spacetime_definition(std::filesystem::path const& path);

SpacetimeModel load_spacetime_file(std::filesystem::path const& path,
                                   ParameterMap const& overrides = {});

/// Applies K=V overrides: G and c go to the constants, others must name an
/// existing parameter (LoadError otherwise).
void apply_overrides(ModelDefinition& def, ParameterMap const& overrides);

/// Catalog name or path to a spacetime file.
SpacetimeModel resolve_spacetime(std::string const& name_or_path,
                                 ParameterMap const& overrides = {});

}  // namespace rcgeom
