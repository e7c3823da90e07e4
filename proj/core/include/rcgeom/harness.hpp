// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

// Suite orchestration: every identity check evaluated over a grid, reduced
// by max-abs in grid order, compared against a tolerance tier.

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rcgeom/spacetime.hpp"
#include "rcgeom/field_jets.hpp"

namespace rcgeom {

enum class Suite { kMetric, kLc, kRc, kMaxwell, kEinstein, kDynamics, kGauge, kAll };

std::string_view suite_name(Suite s) noexcept;
std::optional<Suite> suite_from_name(std::string_view name) noexcept;
std::vector<std::string> suite_names();

struct SuiteSpec {
  Suite suite = Suite::kAll;
  std::string spacetime;  // catalog name, "charge-ball", or a file path
  ParameterMap params;
  std::map<std::string, GridAxis> grid;  // by coordinate name
  std::map<std::string, double> tolerances;  // by check id
  DiffMode mode = DiffMode::kDual;
  int jobs = 1;
  std::optional<std::string> gauge_phi;  // default: fixtures::default_gauge_function
};

struct CheckRecord {
  std::string id;
  std::string paper_anchor;
  long grid_points = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::optional<std::string> error;  // first failure that prevented evaluation
};

/// Evidence that is reported but never fails a run.
struct Observation {
  std::string id;
  std::string paper_anchor;
  double value = 0.0;
  std::string note;
};

struct VerificationReport {
  int schema = 1;
  std::string artifact_version;
  std::string spacetime;
  std::string suite;
  ParameterMap params;
  PhysicalConstants constants;
  DiffMode mode = DiffMode::kDual;
  std::vector<CheckRecord> checks;
  std::vector<Observation> observations;
  double wall_ms = 0.0;

  bool all_pass() const noexcept;
};

std::string artifact_version();

/// Definition for a catalog name, "charge-ball" or spacetime file, before
/// overrides. Throws LoadError.
ModelDefinition resolve_definition(std::string const& name_or_path);

/// resolve_definition plus parameter and grid overrides, then the metric
/// validated once on the final grid. Throws LoadError / SignatureError.
SpacetimeModel resolve_model(std::string const& name_or_path, ParameterMap const& overrides = {},
                             std::map<std::string, GridAxis> const& grid = {});

/// Replaces the named axes and revalidates. Throws LoadError for unknown
/// coordinates.
SpacetimeModel apply_grid_overrides(SpacetimeModel const& model,
                                    std::map<std::string, GridAxis> const& grid);

/// Check ids a suite can emit on this model (tolerance keys).
std::vector<std::string> check_ids(Suite suite, SpacetimeModel const& model);

/// Tolerance before overrides.
double default_tolerance(std::string const& check_id, DiffMode mode);

/// Loads the spacetime, then runs. Load and usage errors throw; failures of
/// individual checks (including convention violations) land in the report.
VerificationReport run_suite(SuiteSpec const& spec);
VerificationReport run_suite(SpacetimeModel const& model, SuiteSpec const& spec);

/// Deterministic JSON, numbers with 17 significant digits.
void write_report_json(std::ostream& out, VerificationReport const& report);
std::string report_json(VerificationReport const& report);

/// Quoted, escaped JSON string literal.
std::string json_string(std::string_view s);

/// One line per check for terminals.
void write_report_summary(std::ostream& out, VerificationReport const& report);

}  // namespace rcgeom
