// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rcgeom/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "rcgeom/dynamics.hpp"
#include "rcgeom/electromagnetism.hpp"
#include "rcgeom/error.hpp"
#include "rcgeom/fixtures.hpp"
#include "rcgeom/gauge.hpp"
#include "rcgeom/parallel.hpp"
#include "rcgeom/riemann_cartan.hpp"

#ifndef RCGEOM_VERSION
#define RCGEOM_VERSION "0.0.0"
#endif

namespace rcgeom {

namespace {

constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

enum class Tier { kExact, kAlgebraic, kFlow, kCurvature, kThird, kConservation, kIndicator };

double tier_tolerance(Tier t, DiffMode mode) {
  bool dual = mode == DiffMode::kDual;
  switch (t) {
    case Tier::kExact: return 1e-12;
    case Tier::kAlgebraic: return dual ? 1e-10 : 1e-8;
    // First derivatives of dust fields: central-difference truncation is
    // ~h² f''' in fd mode.
    case Tier::kFlow: return dual ? 1e-10 : 1e-6;
    case Tier::kCurvature: return dual ? 1e-8 : 1e-5;
    case Tier::kThird: return dual ? 1e-7 : 1e-4;
    case Tier::kConservation: return dual ? 1e-6 : 1e-4;
    case Tier::kIndicator: return 0.5;
  }
  return 0.0;
}

struct CheckDef {
  char const* id;
  char const* anchor;
  Suite suite;
  Tier tier;
};

// Grid-point checks, in report order.
constexpr CheckDef kPointChecks[] = {
    {"metric.inverse", "Eq.rec", Suite::kMetric, Tier::kExact},
    {"metric.signature", "Eq.rec", Suite::kMetric, Tier::kIndicator},
    {"metric.determinant", "Eq.15", Suite::kMetric, Tier::kExact},
    {"lc.symmetry", "Eq.2", Suite::kLc, Tier::kExact},
    {"lc.metric_compatibility", "Eq.2", Suite::kLc, Tier::kAlgebraic},
    {"lc.riemann_antisymmetry", "Eq.17", Suite::kLc, Tier::kAlgebraic},
    {"lc.einstein_definition", "Eq.31", Suite::kLc, Tier::kExact},
    {"lc.contracted_bianchi", "Eq.36", Suite::kLc, Tier::kThird},
    {"rc.connection_additivity", "Eq.1", Suite::kRc, Tier::kExact},
    {"rc.contorsion_antisymmetry", "Eq.cont", Suite::kRc, Tier::kExact},
    {"rc.contorsion_ansatz", "Eq.20", Suite::kRc, Tier::kExact},
    {"rc.torsion_definition", "Eq.3", Suite::kRc, Tier::kExact},
    {"rc.torsion_roundtrip", "Eq.cont", Suite::kRc, Tier::kAlgebraic},
    {"rc.metric_compatibility", "Sec.2", Suite::kRc, Tier::kAlgebraic},
    {"rc.decomposition", "Eq.17", Suite::kRc, Tier::kCurvature},
    {"rc.quadratic_cancellation", "Eq.17", Suite::kRc, Tier::kExact},
    {"rc.scalar_split_trace", "Eq.18", Suite::kRc, Tier::kCurvature},
    {"rc.scalar_split_fields", "Eq.19", Suite::kRc, Tier::kCurvature},
    {"rc.current_pair_cancellation", "Eq.6", Suite::kRc, Tier::kExact},
    {"rc.stress_pair_cancellation", "Eq.38", Suite::kRc, Tier::kExact},
    {"maxwell.antisymmetry", "Eq.13", Suite::kMaxwell, Tier::kExact},
    {"maxwell.homogeneous", "Eq.12", Suite::kMaxwell, Tier::kAlgebraic},
    {"maxwell.current_forms", "Eq.15", Suite::kMaxwell, Tier::kCurvature},
    {"maxwell.rc_divergence", "Eq.6", Suite::kMaxwell, Tier::kCurvature},
    {"maxwell.current_oracle", "Eq.15", Suite::kMaxwell, Tier::kCurvature},
    {"maxwell.current_conservation", "Eq.16", Suite::kMaxwell, Tier::kConservation},
    {"maxwell.stress_symmetry", "T_{mu nu}", Suite::kMaxwell, Tier::kExact},
    {"maxwell.stress_trace", "T_{mu nu}", Suite::kMaxwell, Tier::kAlgebraic},
    {"maxwell.energy_exchange", "Eq.40", Suite::kMaxwell, Tier::kThird},
    {"maxwell.chern_simons_antisymmetry", "Eq.chern-simons", Suite::kMaxwell, Tier::kExact},
    {"einstein.residual", "Eq.31", Suite::kEinstein, Tier::kCurvature},
    {"dynamics.dust_normalization", "Sec.4", Suite::kDynamics, Tier::kAlgebraic},
    {"dynamics.rc_mass_balance", "Eq.42", Suite::kDynamics, Tier::kFlow},
    {"dynamics.lc_mass_balance", "Eq.46", Suite::kDynamics, Tier::kFlow},
    {"dynamics.flow_transport", "Eq.44", Suite::kDynamics, Tier::kFlow},
};
constexpr std::size_t kNumPointChecks = std::size(kPointChecks);

// Worldline checks have fixed tolerances; rk4 error, not derivative mode,
// dominates them.
struct WorldlineCheckDef {
  char const* id;
  char const* anchor;
  double tolerance;
};
constexpr WorldlineCheckDef kWorldlineChecks[] = {
    {"dynamics.worldline_normalization_drift", "Eq.45", 1e-8},
    {"dynamics.worldline_closed_form", "Eq.45", 1e-6},
    {"dynamics.worldline_circular_radius", "Eq.45", 1e-6},
    {"dynamics.worldline_transport", "Eq.44", 1e-8},
};

constexpr char const* kGaugeAnchors[][2] = {
    {"gauge.F_invariant", "Eq.13"},
    {"gauge.J_invariant", "Eq.15"},
    {"gauge.T_invariant", "T_{mu nu}"},
    {"gauge.einstein_residual_invariant", "Eq.31"},
    {"gauge.lorentz_rhs_invariant", "Eq.45"},
    {"gauge.contorsion_routes", "Eq.47"},
    {"gauge.scalar_curvature_shift", "Eq.49"},
    {"gauge.K_delta", "Eq.47"},
    {"gauge.torsion_delta", "Eq.47"},
    {"gauge.rc_curvature_delta", "Eq.48"},
    {"gauge.contorsion_shift_opposite_sign", "Eq.47"},
};

char const* gauge_anchor(std::string const& id) {
  for (auto const& [k, a] : kGaugeAnchors) {
    if (id == k) return a;
  }
  return "Sec.5";
}

bool in_suite(Suite check, Suite requested) {
  return requested == Suite::kAll || check == requested;
}

template <class A>
double max_abs(A const& a) {
  if constexpr (std::is_arithmetic_v<A>) {
    return std::abs(a);
  } else {
    double m = 0.0;
    for (auto const& e : a) m = std::max(m, max_abs(e));
    return m;
  }
}

double metric_compatibility(Geometry<double> const& geo, Arr3<double> const& gamma) {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) {
        double v = geo.dg[a][m][n];
        for (int d = 0; d < 4; ++d) {
          v -= gamma[a][m][d] * geo.g[d][n] + gamma[a][n][d] * geo.g[m][d];
        }
        worst = std::max(worst, std::abs(v));
      }
    }
  }
  return worst;
}

double signature_indicator(Arr2<double> const& g) {
  auto [pos, neg] = signature_counts(to_tensor(g, Variance::Down, Variance::Down));
  return pos == 1 && neg == 3 ? 0.0 : 1.0;
}

struct PointResult {
  std::array<double, kNumPointChecks> values{};
  std::optional<std::string> error;
  std::array<double, 1> printed_mass_balance{kNotApplicable};
};

std::string point_text(Point const& x) {
  return fmt::format("({:.6g}, {:.6g}, {:.6g}, {:.6g})", x[0], x[1], x[2], x[3]);
}

PointResult evaluate_point(SpacetimeModel const& model, Point const& x, Suite suite,
                           DiffMode mode, std::optional<DustModel> const& dust) {
  PointResult out;
  out.values.fill(kNotApplicable);
  bool need_third = in_suite(Suite::kLc, suite) || in_suite(Suite::kMaxwell, suite);
  try {
    GeometrySnapshot snap = make_snapshot(model, x, mode, need_third);
    auto const& geo = snap.geo;
    double const C = model.constants().C();
    double const c = model.constants().c;
    std::size_t i = 0;
    auto put = [&](double v) { out.values[i++] = v; };
    auto skip = [&] { ++i; };

    // metric
    {
      double inv = 0.0;
      for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
          double s = 0.0;
          for (int a = 0; a < 4; ++a) s += geo.g_inv[m][a] * geo.g[a][n];
          inv = std::max(inv, std::abs(s - (m == n ? 1.0 : 0.0)));
        }
      }
      put(inv);
      put(signature_indicator(geo.g));
      put(std::abs(geo.sqrt_neg_det * geo.sqrt_neg_det + geo.det) / std::abs(geo.det));
    }

    // Levi-Civita
    {
      double sym = 0.0, anti = 0.0, eins = 0.0;
      for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
          for (int l = 0; l < 4; ++l) {
            sym = std::max(sym, std::abs(geo.lc[m][n][l] - geo.lc[n][m][l]));
            for (int h = 0; h < 4; ++h) {
              anti = std::max(anti, std::abs(geo.riemann_lc[m][n][l][h] + geo.riemann_lc[n][m][l][h]));
            }
          }
          eins = std::max(eins, std::abs(geo.einstein_dd[m][n] -
                                         (geo.ricci_lc[m][n] - 0.5 * geo.g[m][n] * geo.scalar_lc)));
        }
      }
      put(sym);
      put(metric_compatibility(geo, geo.lc));
      put(anti);
      put(eins);
      if (snap.has_third) {
        put(max_abs(einstein_divergence(snap)));
      } else {
        skip();
      }
    }

    // Riemann-Cartan
    {
      double add = 0.0, kanti = 0.0, ansatz = 0.0, tdef = 0.0, round = 0.0, decomp = 0.0;
      Arr3<double> T_down{};
      for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
          for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int l = 0; l < 4; ++l) s += geo.g[b][l] * geo.torsion[m][n][l];
            T_down[m][n][b] = s;
          }
        }
      }
      for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
          for (int l = 0; l < 4; ++l) {
            add = std::max(add, std::abs(geo.gamma[m][n][l] - geo.lc[m][n][l] - geo.K[m][n][l]));
            kanti = std::max(kanti, std::abs(geo.K_down[m][n][l] + geo.K_down[m][l][n]));
            ansatz = std::max(ansatz, std::abs(geo.K[m][n][l] + C * geo.A[m] * geo.F_mixed[n][l]));
            tdef = std::max(tdef, std::abs(geo.torsion[m][n][l] -
                                           (geo.gamma[m][n][l] - geo.gamma[n][m][l])));
            double k = 0.5 * (T_down[m][n][l] - T_down[m][l][n] - T_down[n][l][m]);
            round = std::max(round, std::abs(k - geo.K_down[m][n][l]));
            for (int h = 0; h < 4; ++h) {
              decomp = std::max(decomp, std::abs(geo.riemann_rc[m][n][l][h] -
                                                 geo.riemann_rc_split[m][n][l][h]));
            }
          }
        }
      }
      put(add);
      put(kanti);
      put(ansatz);
      put(tdef);
      put(round);
      put(metric_compatibility(geo, geo.gamma));
      put(decomp);
      put(max_abs(geo.quadratic_pair));
      put(std::abs(geo.scalar_rc - (geo.scalar_lc + 2.0 * geo.div_k_trace)));
      auto split = scalar_curvature_split(geo, model.constants());
      put(std::abs(split.R - (split.R_bar + split.em_term + split.coupling_term)));
      put(max_abs(geo.rc_pair));
      put(max_abs(geo.exchange_pair));
    }

    // Maxwell
    {
      double anti = 0.0, forms = 0.0, rc = 0.0, tsym = 0.0, trace = 0.0, cs = 0.0;
      for (int m = 0; m < 4; ++m) {
        forms = std::max(forms, std::abs(geo.J_up[m] - geo.J_up_christoffel[m]));
        rc = std::max(rc, std::abs(geo.J_up_rc[m] - geo.J_up[m]));
        for (int n = 0; n < 4; ++n) {
          anti = std::max(anti, std::abs(geo.F_dd[m][n] + geo.F_dd[n][m]));
          tsym = std::max(tsym, std::abs(geo.T_dd[m][n] - geo.T_dd[n][m]));
          trace += geo.g_inv[m][n] * geo.T_dd[m][n];
          for (int l = 0; l < 4; ++l) {
            double v = geo.chern_simons[m][n][l];
            cs = std::max({cs, std::abs(v + geo.chern_simons[n][m][l]),
                           std::abs(v + geo.chern_simons[m][l][n]),
                           std::abs(v + geo.chern_simons[l][n][m])});
          }
        }
      }
      put(anti);
      put(homogeneous_residual(geo.dF_dd));
      put(forms);
      put(rc);
      if (auto J = fixtures::expected_current(model, x)) {
        double d = 0.0;
        for (int m = 0; m < 4; ++m) d = std::max(d, std::abs(geo.J_up[m] - (*J)[m]));
        put(d);
      } else {
        skip();
      }
      if (snap.has_third) {
        put(std::abs(current_conservation(snap)));
      } else {
        skip();
      }
      put(tsym);
      put(std::abs(trace));
      if (snap.has_third) {
        Vec4<double> div = lc_divergence(geo, geo.T_uu, geo.dT_uu);
        Vec4<double> J_down{};
        for (int m = 0; m < 4; ++m) {
          for (int a = 0; a < 4; ++a) J_down[m] += geo.g[m][a] * geo.J_up[a];
        }
        double worst = 0.0;
        for (int n = 0; n < 4; ++n) {
          double rhs = 0.0;
          for (int m = 0; m < 4; ++m) rhs += geo.F_uu[m][n] * J_down[m];
          worst = std::max(worst, std::abs(div[n] - rhs / c));
        }
        put(worst);
      } else {
        skip();
      }
      put(cs);
    }

    // Einstein
    put(einstein_residual(geo, model));

    // Dust
    if (dust && dust->support.contains(x)) {
      auto ex = exchange_identities(model, snap, *dust);
      put(ex.normalization);
      put(ex.rc_mass_balance);
      put(ex.lc_mass_balance);
      put(ex.flow_lorentz);
      out.printed_mass_balance[0] = ex.rc_mass_balance_as_printed;
    } else {
      i += 4;
    }
  } catch (Error const& e) {
    out.error = fmt::format("at {}: {}", point_text(x), e.what());
  }
  return out;
}

struct WorldlineScenario {
  std::string label;
  WorldlineState init;
  double charge_ratio = 0.0;
  IntegratorConfig cfg;
  std::optional<double> circular_radius;
};

std::vector<WorldlineScenario> worldline_scenarios(SpacetimeModel const& model) {
  std::vector<WorldlineScenario> out;
  auto const& n = model.name();
  auto param = [&](char const* key, double fallback) {
    auto it = model.params().find(key);
    return it == model.params().end() ? fallback : it->second;
  };
  if (n == "minkowski") {
    WorldlineScenario s{"inertial", {}, 0.0, {}, std::nullopt};
    s.init.x = {0.0, 1.0, 0.0, 0.0};
    s.init.V = normalize_velocity(model, s.init.x, {1.0, 0.3, 0.1, 0.0});
    s.cfg.ds = 1e-2;
    s.cfg.steps = 1000;
    out.push_back(s);
  } else if (n == "minkowski-constant-e") {
    double E = param("E", 1.0);
    WorldlineScenario s{"hyperbolic", {}, 0.5 / E, {}, std::nullopt};
    s.init.x = {0.0, 2.0, 0.0, 0.0};
    s.init.V = {1.0, 0.0, 0.0, 0.0};
    s.cfg.ds = 1e-3;
    s.cfg.steps = 2000;
    s.cfg.save_every = 10;
    out.push_back(s);
  } else if (n == "schwarzschild") {
    double M = param("M", 1.0) * model.constants().G / (model.constants().c * model.constants().c);
    double r = 8.0 * M;
    WorldlineScenario s{"circular", fixtures::circular_orbit(M, r), 0.0, {}, r};
    s.cfg.ds = 1e-2;
    s.cfg.steps = static_cast<long>(std::ceil(fixtures::circular_orbit_period(M, r) / s.cfg.ds));
    s.cfg.save_every = 10;
    out.push_back(s);
  } else {
    // Charged particle released from rest at the first grid point.
    WorldlineScenario s{"released", {}, 0.5, {}, std::nullopt};
    auto pts = model.grid_points();
    s.init.x = pts.front();
    s.init.V = normalize_velocity(model, s.init.x, {1.0, 0.0, 0.0, 0.0});
    s.cfg.ds = 1e-3;
    s.cfg.steps = 1000;
    s.cfg.save_every = 10;
    out.push_back(s);
  }
  return out;
}

void run_worldlines(SpacetimeModel const& model, VerificationReport& report) {
  std::array<double, std::size(kWorldlineChecks)> worst{};
  std::array<long, std::size(kWorldlineChecks)> count{};
  std::optional<std::string> error;
  double printed = 0.0;
  for (auto const& sc : worldline_scenarios(model)) {
    try {
      auto res = integrate_worldline(model, sc.init, sc.charge_ratio, sc.cfg);
      if (res.error) error = sc.label + ": " + *res.error;
      long n = static_cast<long>(res.samples.size());
      worst[0] = std::max(worst[0], res.max_norm_drift);
      count[0] += n;
      if (auto cf = fixtures::closed_form(model, sc.init, sc.charge_ratio)) {
        for (auto const& st : res.samples) {
          auto ex = (*cf)(st.s);
          for (int i = 0; i < 4; ++i) {
            worst[1] = std::max({worst[1], std::abs(st.x[i] - ex.x[i]), std::abs(st.V[i] - ex.V[i])});
          }
        }
        count[1] += n;
      }
      if (sc.circular_radius) {
        for (auto const& st : res.samples) {
          worst[2] = std::max(worst[2], std::abs(st.x[1] - *sc.circular_radius));
        }
        count[2] += n;
      }
      for (auto const& st : res.samples) {
        worst[3] = std::max(worst[3], rc_transport_residual(model, st, sc.charge_ratio));
        auto rhs = lorentz_rhs(model, st, sc.charge_ratio);
        printed = std::max(printed, rc_transport_residual_as_printed(model, st, sc.charge_ratio, rhs.dV));
      }
      count[3] += n;
    } catch (Error const& e) {
      error = sc.label + ": " + e.what();
    }
  }
  for (std::size_t i = 0; i < std::size(kWorldlineChecks); ++i) {
    if (count[i] == 0 && !error) continue;
    auto const& d = kWorldlineChecks[i];
    CheckRecord r{d.id, d.anchor, count[i], worst[i], d.tolerance, false, error};
    r.pass = !error && worst[i] <= d.tolerance;
    report.checks.push_back(std::move(r));
  }
  report.observations.push_back({"dynamics.worldline_transport_as_printed", "Eq.43", printed,
                                 "coupling term with the printed sign"});
}

void run_gauge(SpacetimeModel const& model, SuiteSpec const& spec, VerificationReport& report) {
  std::string src = spec.gauge_phi.value_or(fixtures::default_gauge_function(model));
  GaugeFunction phi = GaugeFunction::parse(model, src);
  long n = static_cast<long>(model.grid_points().size());
  std::vector<GaugeCheck> checks;
  std::optional<std::string> error;
  try {
    checks = gauge_invariance_suite(model, phi, spec.mode, spec.jobs);
  } catch (Error const& e) {
    error = e.what();
  }
  if (error) {
    for (auto const& [id, anchor] : kGaugeAnchors) {
      if (std::string(id).ends_with("_delta") || std::string(id).ends_with("opposite_sign")) continue;
      report.checks.push_back({id, anchor, n, 0.0, default_tolerance(id, spec.mode), false, error});
    }
    return;
  }
  for (auto const& c : checks) {
    if (c.informational) {
      report.observations.push_back({c.id, gauge_anchor(c.id), c.max_value, "phi = " + src});
      continue;
    }
    double tol = c.tolerance;
    if (auto it = spec.tolerances.find(c.id); it != spec.tolerances.end()) tol = it->second;
    report.checks.push_back({c.id, gauge_anchor(c.id), n, c.max_value, tol, c.max_value <= tol, std::nullopt});
  }
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  return fmt::format("{:.17g}", v);
}


}  // namespace

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<int>(ch));
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

std::string_view suite_name(Suite s) noexcept {
  switch (s) {
    case Suite::kMetric: return "metric";
    case Suite::kLc: return "lc";
    case Suite::kRc: return "rc";
    case Suite::kMaxwell: return "maxwell";
    case Suite::kEinstein: return "einstein";
    case Suite::kDynamics: return "dynamics";
    case Suite::kGauge: return "gauge";
    case Suite::kAll: return "all";
  }
  return "all";
}

std::optional<Suite> suite_from_name(std::string_view name) noexcept {
  for (Suite s : {Suite::kMetric, Suite::kLc, Suite::kRc, Suite::kMaxwell, Suite::kEinstein,
                  Suite::kDynamics, Suite::kGauge, Suite::kAll}) {
    if (suite_name(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<std::string> suite_names() {
  return {"metric", "lc", "rc", "maxwell", "einstein", "dynamics", "gauge", "all"};
}

bool VerificationReport::all_pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](CheckRecord const& c) { return c.pass; });
}

std::string artifact_version() { return RCGEOM_VERSION; }

ModelDefinition resolve_definition(std::string const& name_or_path) {
  if (name_or_path == "charge-ball") return fixtures::charge_ball_definition();
  for (auto const& n : catalog_names()) {
    if (n == name_or_path) return catalog_definition(n);
  }
  if (std::filesystem::exists(name_or_path)) return read_spacetime_definition(name_or_path);
  throw LoadError("'" + name_or_path + "' is neither a catalog spacetime nor a readable file");
}

SpacetimeModel resolve_model(std::string const& name_or_path, ParameterMap const& overrides,
                             std::map<std::string, GridAxis> const& grid) {
  ModelDefinition d = resolve_definition(name_or_path);
  apply_overrides(d, overrides);
  for (auto const& [coord, axis] : grid) {
    auto it = std::find(d.coords.begin(), d.coords.end(), coord);
    if (it == d.coords.end()) throw LoadError("grid override names unknown coordinate '" + coord + "'");
    d.grid[static_cast<std::size_t>(it - d.coords.begin())] = axis;
  }
  SpacetimeModel m(std::move(d));
  m.validate_on_grid();
  return m;
}

SpacetimeModel apply_grid_overrides(SpacetimeModel const& model,
                                    std::map<std::string, GridAxis> const& grid) {
  if (grid.empty()) return model;
  auto axes = model.default_grid();
  for (auto const& [coord, axis] : grid) {
    int i = model.chart().index_of(coord);
    if (i < 0) throw LoadError("grid override names unknown coordinate '" + coord + "'");
    axes[static_cast<std::size_t>(i)] = axis;
  }
  SpacetimeModel out = model.with_grid(axes);
  out.validate_on_grid();
  return out;
}

std::vector<std::string> check_ids(Suite suite, SpacetimeModel const&) {
  std::vector<std::string> ids;
  for (auto const& d : kPointChecks) {
    if (in_suite(d.suite, suite)) ids.emplace_back(d.id);
  }
  if (in_suite(Suite::kDynamics, suite)) {
    for (auto const& d : kWorldlineChecks) ids.emplace_back(d.id);
  }
  if (in_suite(Suite::kGauge, suite)) {
    for (auto const& [id, anchor] : kGaugeAnchors) ids.emplace_back(id);
  }
  return ids;
}

double default_tolerance(std::string const& check_id, DiffMode mode) {
  for (auto const& d : kPointChecks) {
    if (check_id == d.id) return tier_tolerance(d.tier, mode);
  }
  for (auto const& d : kWorldlineChecks) {
    if (check_id == d.id) return d.tolerance;
  }
  bool dual = mode == DiffMode::kDual;
  if (check_id == "gauge.F_invariant") return dual ? 1e-12 : 1e-8;
  if (check_id == "gauge.J_invariant") return dual ? 1e-10 : 1e-5;
  if (check_id == "gauge.T_invariant") return dual ? 1e-10 : 1e-8;
  if (check_id == "gauge.einstein_residual_invariant") return dual ? 1e-10 : 1e-5;
  if (check_id == "gauge.lorentz_rhs_invariant") return 1e-12;
  if (check_id == "gauge.contorsion_routes") return dual ? 1e-12 : 1e-8;
  if (check_id == "gauge.scalar_curvature_shift") return dual ? 1e-8 : 1e-5;
  throw ContractViolation("unknown check id '" + check_id + "'");
}

VerificationReport run_suite(SuiteSpec const& spec) {
  SpacetimeModel model = resolve_model(spec.spacetime, spec.params, spec.grid);
  return run_suite(model, spec);
}

VerificationReport run_suite(SpacetimeModel const& model, SuiteSpec const& spec) {
  auto const ids = check_ids(spec.suite, model);
  for (auto const& [id, tol] : spec.tolerances) {
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
      throw ContractViolation("tolerance override for unknown check '" + id + "'");
    }
    if (!(tol > 0.0)) throw ContractViolation("tolerance for '" + id + "' must be positive");
  }

  VerificationReport report;
  report.artifact_version = artifact_version();
  report.spacetime = model.name();
  report.suite = std::string(suite_name(spec.suite));
  report.params = model.params();
  report.constants = model.constants();
  report.mode = spec.mode;

  auto const start = std::chrono::steady_clock::now();
  bool any_point_suite = spec.suite != Suite::kGauge;
  if (any_point_suite) {
    auto points = model.grid_points();
    std::optional<DustModel> dust;
    if (in_suite(Suite::kDynamics, spec.suite)) dust = fixtures::default_dust(model);
    auto results = parallel_map<PointResult>(points.size(), spec.jobs, [&](std::size_t i) {
      return evaluate_point(model, points[i], spec.suite, spec.mode, dust);
    });

    // Ordered reduction: grid order, independent of scheduling.
    for (std::size_t c = 0; c < kNumPointChecks; ++c) {
      auto const& d = kPointChecks[c];
      if (!in_suite(d.suite, spec.suite)) continue;
      CheckRecord r;
      r.id = d.id;
      r.paper_anchor = d.anchor;
      r.tolerance = tier_tolerance(d.tier, spec.mode);
      if (auto it = spec.tolerances.find(r.id); it != spec.tolerances.end()) r.tolerance = it->second;
      for (auto const& p : results) {
        if (p.error) {
          if (!r.error) r.error = p.error;
          continue;
        }
        double v = p.values[c];
        if (std::isnan(v)) continue;
        ++r.grid_points;
        r.max_residual = std::max(r.max_residual, v);
      }
      if (r.grid_points == 0 && !r.error) continue;  // nothing to check on this model
      r.pass = !r.error && r.max_residual <= r.tolerance;
      report.checks.push_back(std::move(r));
    }
    if (dust) {
      double printed = 0.0;
      long n = 0;
      for (auto const& p : results) {
        if (!p.error && !std::isnan(p.printed_mass_balance[0])) {
          printed = std::max(printed, p.printed_mass_balance[0]);
          ++n;
        }
      }
      if (n > 0) {
        report.observations.push_back({"dynamics.rc_mass_balance_as_printed", "Eq.42", printed,
                                       "coupling term with the printed sign"});
      }
    } else if (in_suite(Suite::kDynamics, spec.suite)) {
      report.observations.push_back(
          {"dynamics.dust_fixture", "Sec.4", 0.0, "no dust fixture for this spacetime"});
    }
    if (in_suite(Suite::kDynamics, spec.suite)) {
      run_worldlines(model, report);
      for (auto& r : report.checks) {
        if (auto it = spec.tolerances.find(r.id);
            it != spec.tolerances.end() && r.id.starts_with("dynamics.worldline")) {
          r.tolerance = it->second;
          r.pass = !r.error && r.max_residual <= r.tolerance;
        }
      }
    }
  }
  if (in_suite(Suite::kGauge, spec.suite)) run_gauge(model, spec, report);
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void write_report_json(std::ostream& out, VerificationReport const& r) {
  out << report_json(r);
}

std::string report_json(VerificationReport const& r) {
  std::string s;
  auto add = [&](std::string_view v) { s += v; };
  add("{\n");
  add(fmt::format("  \"schema\": {},\n", r.schema));
  add(fmt::format("  \"artifact_version\": {},\n", json_string(r.artifact_version)));
  add(fmt::format("  \"spacetime\": {},\n", json_string(r.spacetime)));
  add(fmt::format("  \"suite\": {},\n", json_string(r.suite)));
  add("  \"params\": {");
  bool first = true;
  for (auto const& [k, v] : r.params) {  // std::map: sorted keys
    add(fmt::format("{}{}: {}", first ? "" : ", ", json_string(k), format_number(v)));
    first = false;
  }
  add("},\n");
  add(fmt::format("  \"constants\": {{\"G\": {}, \"c\": {}, \"C\": {}}},\n",
                  format_number(r.constants.G), format_number(r.constants.c),
                  format_number(r.constants.C())));
  add(fmt::format("  \"diff_mode\": {},\n", json_string(r.mode == DiffMode::kDual ? "dual" : "fd")));
  add("  \"checks\": [");
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    auto const& c = r.checks[i];
    add(i ? ",\n    " : "\n    ");
    add(fmt::format(
        "{{\"id\": {}, \"paper_anchor\": {}, \"grid_points\": {}, \"max_residual\": {}, "
        "\"tolerance\": {}, \"pass\": {}",
        json_string(c.id), json_string(c.paper_anchor), c.grid_points,
        format_number(c.max_residual), format_number(c.tolerance), c.pass ? "true" : "false"));
    if (c.error) add(fmt::format(", \"error\": {}", json_string(*c.error)));
    add("}");
  }
  add(r.checks.empty() ? "],\n" : "\n  ],\n");
  add("  \"observations\": [");
  for (std::size_t i = 0; i < r.observations.size(); ++i) {
    auto const& o = r.observations[i];
    add(i ? ",\n    " : "\n    ");
    add(fmt::format("{{\"id\": {}, \"paper_anchor\": {}, \"value\": {}, \"note\": {}}}",
                    json_string(o.id), json_string(o.paper_anchor), format_number(o.value),
                    json_string(o.note)));
  }
  add(r.observations.empty() ? "],\n" : "\n  ],\n");
  add(fmt::format("  \"wall_ms\": {}\n", format_number(r.wall_ms)));
  add("}\n");
  return s;
}

void write_report_summary(std::ostream& out, VerificationReport const& r) {
  for (auto const& c : r.checks) {
    out << fmt::format("{:<4} {:<42} {:>11.3e} <= {:<9.1e} ({} pts)", c.pass ? "ok" : "FAIL", c.id,
                       c.max_residual, c.tolerance, c.grid_points);
    if (c.error) out << "  " << *c.error;
    out << '\n';
  }
  for (auto const& o : r.observations) {
    out << fmt::format("info {:<42} {:>11.3e}  {}\n", o.id, o.value, o.note);
  }
  std::size_t failed = static_cast<std::size_t>(
      std::count_if(r.checks.begin(), r.checks.end(), [](auto const& c) { return !c.pass; }));
  out << fmt::format("{}: {} checks, {} failed\n", r.spacetime, r.checks.size(), failed);
}

}  // namespace rcgeom
