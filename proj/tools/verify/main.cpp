// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

// verify: identity suites, worldlines and gauge checks from the shell.
// Exit status: 0 all checks pass, 1 a check failed (or a worldline left the
// domain), 2 usage or load error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rcgeom/dynamics.hpp"
#include "rcgeom/error.hpp"
#include "rcgeom/fixtures.hpp"
#include "rcgeom/harness.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<std::string, std::string> split_assignment(std::string const& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("expected KEY=VALUE, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

double to_number(std::string const& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (std::exception const&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError("not a number: '" + text + "'");
  return v;
}

rcgeom::ParameterMap parse_params(std::vector<std::string> const& items) {
  rcgeom::ParameterMap out;
  for (auto const& item : items) {
    auto [k, v] = split_assignment(item);
    out[k] = to_number(v);
  }
  return out;
}

std::map<std::string, rcgeom::GridAxis> parse_grid(std::vector<std::string> const& items) {
  std::map<std::string, rcgeom::GridAxis> out;
  for (auto const& item : items) {
    auto [k, v] = split_assignment(item);
    out[k] = rcgeom::parse_grid_axis(v);
  }
  return out;
}

std::map<std::string, double> parse_tolerances(std::vector<std::string> const& items) {
  std::map<std::string, double> out;
  for (auto const& item : items) {
    auto [k, v] = split_assignment(item);
    out[k] = to_number(v);
  }
  return out;
}

std::array<double, 4> parse_vec4(std::string const& text) {
  std::array<double, 4> out{};
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    auto comma = text.find(',', start);
    bool last = i == 3;
    if (last != (comma == std::string::npos)) throw UsageError("expected four comma-separated numbers");
    out[static_cast<std::size_t>(i)] = to_number(text.substr(start, last ? std::string::npos : comma - start));
    start = comma + 1;
  }
  return out;
}

rcgeom::DiffMode parse_mode(std::string const& s) {
  if (s == "dual") return rcgeom::DiffMode::kDual;
  if (s == "fd") return rcgeom::DiffMode::kFd;
  throw UsageError("--diff must be dual or fd");
}

void write_text(std::string const& path, std::string const& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

struct CommonArgs {
  std::string spacetime;
  std::vector<std::string> params;
  std::vector<std::string> grid;
  std::vector<std::string> tolerances;
  std::string diff = "dual";
  int jobs = 1;
  std::string out = "-";
  bool timing = false;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--spacetime", a.spacetime, "Catalog name, charge-ball, or spacetime file")->required();
  cmd->add_option("--param", a.params, "Parameter override K=V (repeatable)");
  cmd->add_option("--grid", a.grid, "Grid axis override coord=start:stop:count (repeatable)");
  cmd->add_option("--diff", a.diff, "Derivative mode: dual or fd")->check(CLI::IsMember({"dual", "fd"}));
  cmd->add_option("--tol", a.tolerances, "Tolerance override check=value (repeatable)");
  cmd->add_option("--jobs", a.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", a.out, "Report path, '-' for stdout");
  cmd->add_flag("--timing", a.timing, "Record wall time in the report (otherwise 0)");
}

int emit_report(rcgeom::VerificationReport report, CommonArgs const& a) {
  if (!a.timing) report.wall_ms = 0.0;
  write_text(a.out, rcgeom::report_json(report));
  if (a.out != "-") rcgeom::write_report_summary(std::cout, report);
  return report.all_pass() ? kExitPass : kExitFail;
}

int cmd_run(CommonArgs const& a, std::string const& suite) {
  rcgeom::SuiteSpec spec;
  auto s = rcgeom::suite_from_name(suite);
  if (!s) throw UsageError("unknown suite '" + suite + "'");
  spec.suite = *s;
  spec.spacetime = a.spacetime;
  spec.params = parse_params(a.params);
  spec.grid = parse_grid(a.grid);
  spec.tolerances = parse_tolerances(a.tolerances);
  spec.mode = parse_mode(a.diff);
  spec.jobs = a.jobs;
  return emit_report(rcgeom::run_suite(spec), a);
}

int cmd_gauge(CommonArgs const& a, std::string const& phi) {
  rcgeom::SuiteSpec spec;
  spec.suite = rcgeom::Suite::kGauge;
  spec.spacetime = a.spacetime;
  spec.params = parse_params(a.params);
  spec.grid = parse_grid(a.grid);
  spec.tolerances = parse_tolerances(a.tolerances);
  spec.mode = parse_mode(a.diff);
  spec.jobs = a.jobs;
  spec.gauge_phi = phi;
  return emit_report(rcgeom::run_suite(spec), a);
}

struct WorldlineArgs {
  std::string spacetime;
  std::vector<std::string> params;
  std::string x0, v0;
  double charge_ratio = 0.0;
  double ds = 1e-3;
  long steps = 1000;
  int save_every = 1;
  int renormalize_every = 0;
  std::string method = "rk4";
  std::string out = "traj.csv";
  std::string summary = "-";
};

std::string state_json(rcgeom::WorldlineState const& s) {
  return fmt::format(
      "{{\"s\": {:.17g}, \"x\": [{:.17g}, {:.17g}, {:.17g}, {:.17g}], "
      "\"V\": [{:.17g}, {:.17g}, {:.17g}, {:.17g}]}}",
      s.s, s.x[0], s.x[1], s.x[2], s.x[3], s.V[0], s.V[1], s.V[2], s.V[3]);
}

int cmd_worldline(WorldlineArgs const& a) {
  // Only the starting point needs a valid metric; the sampling grid is unused.
  auto def = rcgeom::resolve_definition(a.spacetime);
  rcgeom::apply_overrides(def, parse_params(a.params));
  rcgeom::SpacetimeModel model(std::move(def));
  rcgeom::WorldlineState init;
  init.x = parse_vec4(a.x0);
  model.validate_on({init.x});
  auto raw = parse_vec4(a.v0);
  if (!(a.ds > 0.0)) throw UsageError("--ds must be positive");
  if (a.steps < 1) throw UsageError("--steps must be at least 1");
  if (a.save_every < 1) throw UsageError("--save-every must be at least 1");
  double raw_norm = rcgeom::velocity_norm(model, init.x, raw);
  init.V = rcgeom::normalize_velocity(model, init.x, raw);

  rcgeom::IntegratorConfig cfg;
  cfg.ds = a.ds;
  cfg.steps = a.steps;
  cfg.save_every = a.save_every;
  cfg.renormalize_every = a.renormalize_every;
  cfg.method = a.method == "rk45" ? rcgeom::IntegratorMethod::kRk45Adaptive
                                  : rcgeom::IntegratorMethod::kRk4;

  auto res = rcgeom::integrate_worldline(model, init, a.charge_ratio, cfg);
  {
    std::ofstream csv(a.out, std::ios::binary);
    if (!csv) throw UsageError("cannot write '" + a.out + "'");
    rcgeom::write_trajectory_csv(csv, model, res.samples);
  }

  std::string closed = "null";
  if (auto cf = rcgeom::fixtures::closed_form(model, init, a.charge_ratio)) {
    double err = 0.0;
    for (auto const& st : res.samples) {
      auto ex = (*cf)(st.s);
      for (int i = 0; i < 4; ++i) {
        err = std::max({err, std::abs(st.x[i] - ex.x[i]), std::abs(st.V[i] - ex.V[i])});
      }
    }
    closed = fmt::format("{:.17g}", err);
  }
  std::string text = "{\n";
  text += "  \"schema\": 1,\n";
  text += fmt::format("  \"spacetime\": {},\n", rcgeom::json_string(model.name()));
  text += fmt::format("  \"charge_ratio\": {:.17g},\n", a.charge_ratio);
  text += fmt::format("  \"ds\": {:.17g},\n", a.ds);
  text += fmt::format("  \"steps\": {},\n", a.steps);
  text += fmt::format("  \"initial_norm\": {:.17g},\n", raw_norm);
  text += fmt::format("  \"velocity_rescaled\": {},\n", std::abs(raw_norm - 1.0) > 0.0 ? "true" : "false");
  text += fmt::format("  \"initial_state\": {},\n", state_json(init));
  text += fmt::format("  \"final_state\": {},\n", state_json(res.samples.back()));
  text += fmt::format("  \"max_norm_drift\": {:.17g},\n", res.max_norm_drift);
  text += fmt::format("  \"closed_form_error\": {},\n", closed);
  text += fmt::format("  \"error\": {}\n", res.error ? rcgeom::json_string(*res.error) : "null");
  text += "}\n";
  write_text(a.summary, text);
  if (res.error) {
    std::cerr << "worldline stopped early: " << *res.error << '\n';
    return kExitFail;
  }
  return kExitPass;
}

int cmd_list() {
  auto show = [](rcgeom::ModelDefinition const& d, std::string_view note) {
    std::string params;
    for (auto const& [k, v] : d.params) params += fmt::format(" {}={:g}", k, v);
    std::cout << fmt::format("{:<22} coords={},{},{},{} {}{}{}\n", d.name, d.coords[0], d.coords[1],
                             d.coords[2], d.coords[3],
                             d.source == rcgeom::SourceKind::kTestField ? "test-field" : "einstein-maxwell",
                             params, note);
  };
  for (auto const& n : rcgeom::catalog_names()) show(rcgeom::catalog_definition(n), "");
  show(rcgeom::fixtures::charge_ball_definition(), "  (fixture)");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemann-Cartan / Einstein-Maxwell identity verifier"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rcgeom::artifact_version());

  CommonArgs run_args;
  std::string suite = "all";
  auto* run = app.add_subcommand("run", "Run an identity suite over a grid");
  add_common(run, run_args);
  run->add_option("--suite", suite, "Suite name")
      ->check(CLI::IsMember(rcgeom::suite_names()));

  CommonArgs gauge_args;
  std::string phi;
  auto* gauge = app.add_subcommand("gauge", "Gauge-invariance suite for one gauge function");
  add_common(gauge, gauge_args);
  gauge->add_option("--phi", phi, "Gauge function expression")->required();

  WorldlineArgs wl;
  auto* worldline = app.add_subcommand("worldline", "Integrate a charged-particle worldline");
  worldline->add_option("--spacetime", wl.spacetime, "Catalog name, charge-ball, or spacetime file")->required();
  worldline->add_option("--param", wl.params, "Parameter override K=V (repeatable)");
  worldline->add_option("--x0", wl.x0, "Initial position a,b,c,d")->required();
  worldline->add_option("--v0", wl.v0, "Initial velocity a,b,c,d (rescaled to g(V,V)=1)")->required();
  worldline->add_option("--charge-ratio", wl.charge_ratio, "rho_q/(rho_0 c^2)");
  worldline->add_option("--ds", wl.ds, "Proper-time step");
  worldline->add_option("--steps", wl.steps, "Number of steps");
  worldline->add_option("--save-every", wl.save_every, "Write every Mth step");
  worldline->add_option("--renormalize-every", wl.renormalize_every, "Rescale V every N steps (0 = never)");
  worldline->add_option("--method", wl.method, "rk4 or rk45")->check(CLI::IsMember({"rk4", "rk45"}));
  worldline->add_option("--out", wl.out, "Trajectory CSV path");
  worldline->add_option("--summary", wl.summary, "Summary JSON path, '-' for stdout");

  app.add_subcommand("list", "List catalog spacetimes and their parameters");

  try {
    app.parse(argc, argv);
  } catch (CLI::Success const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_args, suite);
    if (*gauge) return cmd_gauge(gauge_args, phi);
    if (*worldline) return cmd_worldline(wl);
    return cmd_list();
  } catch (UsageError const& e) {
    std::cerr << "usage error: " << e.what() << '\n';
  } catch (rcgeom::Error const& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}
