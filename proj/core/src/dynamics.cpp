// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rcgeom/dynamics.hpp"

#include <cmath>
#include <ostream>

#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include "rcgeom/error.hpp"

namespace rcgeom {

namespace {

// Γ̄ and the field strength from first partials only.
struct FirstOrder {
  Arr2<double> g{}, g_inv{};
  Arr3<double> lc{};
  Vec4<double> A{};
  Arr2<double> F_dd{}, F_mixed{};
};

FirstOrder first_order(SpacetimeModel const& model, Point const& x) {
  if (!model.domain().contains(x)) throw DomainError("worldline left the chart domain");
  FirstOrder f;
  Arr3<double> dg{};
  for (int m = 0; m < 4; ++m) {
    for (int n = m; n < 4; ++n) {
      auto d = field_gradient(model.g(m, n), x, DiffMode::kDual);
      f.g[m][n] = f.g[n][m] = d.value;
      for (int a = 0; a < 4; ++a) dg[a][m][n] = dg[a][n][m] = d.gradient[a];
    }
  }
  double det = 0.0;
  f.g_inv = invert_metric(f.g, det);
  for (int m = 0; m < 4; ++m) {
    for (int n = m; n < 4; ++n) {
      for (int l = 0; l < 4; ++l) {
        double v = 0.0;
        for (int a = 0; a < 4; ++a) v += f.g_inv[l][a] * (dg[m][n][a] + dg[n][m][a] - dg[a][m][n]);
        f.lc[m][n][l] = f.lc[n][m][l] = 0.5 * v;
      }
    }
  }
  Arr2<double> dA{};
  for (int m = 0; m < 4; ++m) {
    auto d = field_gradient(model.A(m), x, DiffMode::kDual);
    f.A[m] = d.value;
    for (int a = 0; a < 4; ++a) dA[a][m] = d.gradient[a];
  }
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) f.F_dd[m][n] = dA[m][n] - dA[n][m];
  }
  for (int n = 0; n < 4; ++n) {
    for (int l = 0; l < 4; ++l) {
      double v = 0.0;
      for (int a = 0; a < 4; ++a) v += f.g_inv[l][a] * f.F_dd[n][a];
      f.F_mixed[n][l] = v;
    }
  }
  return f;
}

Vec4<double> lorentz_acceleration(FirstOrder const& f, Vec4<double> const& V, double k) {
  Vec4<double> dV{};
  for (int n = 0; n < 4; ++n) {
    double v = 0.0;
    for (int m = 0; m < 4; ++m) {
      for (int d = 0; d < 4; ++d) v -= f.lc[m][d][n] * V[m] * V[d];
      v -= k * f.F_mixed[m][n] * V[m];
    }
    dV[n] = v;
  }
  return dV;
}

double norm_of(Arr2<double> const& g, Vec4<double> const& V) {
  double v = 0.0;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) v += g[m][n] * V[m] * V[n];
  }
  return v;
}

double metric_norm(SpacetimeModel const& model, Point const& x, Vec4<double> const& V) {
  if (!model.domain().contains(x)) throw DomainError("point outside the chart domain");
  Arr2<double> g{};
  for (int m = 0; m < 4; ++m) {
    for (int n = m; n < 4; ++n) g[m][n] = g[n][m] = model.g(m, n)(x);
  }
  return norm_of(g, V);
}

// Transport residual with the coupling sign as a parameter.
double transport(SpacetimeModel const& model, WorldlineState const& st, double k,
                 Vec4<double> const& dV, double coupling_sign) {
  auto f = first_order(model, st.x);
  double C = model.constants().C();
  auto const& V = st.V;
  Vec4<double> V_dn{};
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) V_dn[m] += f.g[m][n] * V[n];
  }
  double AV = 0.0;
  for (int m = 0; m < 4; ++m) AV += f.A[m] * V[m];
  double worst = 0.0;
  for (int n = 0; n < 4; ++n) {
    double a = dV[n];
    double FV = 0.0;    // F_δ^{·ν} V^δ
    double Fuu_V = 0.0; // F^{μν} V_μ
    for (int m = 0; m < 4; ++m) {
      for (int d = 0; d < 4; ++d) {
        double K = -C * f.A[m] * f.F_mixed[d][n];
        a += (f.lc[m][d][n] + K) * V[m] * V[d];
      }
      FV += f.F_mixed[m][n] * V[m];
      double Fmn = 0.0;
      for (int b = 0; b < 4; ++b) Fmn += f.g_inv[m][b] * f.F_mixed[b][n];
      Fuu_V += Fmn * V_dn[m];
    }
    double r = a + k * Fuu_V + coupling_sign * C * AV * FV;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

using OdeState = std::array<double, 8>;

}  // namespace

DustModel DustModel::parse(SpacetimeModel const& model, std::string const& rho0,
                           std::string const& rhoq, std::array<std::string, 4> const& V,
                           std::string const& support) {
  auto params = model.expression_parameters();
  auto field = [&](std::string const& src) {
    return ScalarField(rcgeom::parse(src, model.chart(), params));
  };
  DustModel d;
  d.rho0 = field(rho0);
  d.rhoq = field(rhoq);
  for (int i = 0; i < 4; ++i) d.V_up[i] = field(V[i]);
  if (!support.empty()) d.support = DomainPredicate(rcgeom::parse(support, model.chart(), params));
  return d;
}

WorldlineDerivative lorentz_rhs(SpacetimeModel const& model, WorldlineState const& state,
                                double charge_ratio) {
  auto f = first_order(model, state.x);
  WorldlineDerivative d;
  d.dx = state.V;
  d.dV = lorentz_acceleration(f, state.V, charge_ratio);
  return d;
}

double velocity_norm(SpacetimeModel const& model, Point const& x, Vec4<double> const& V) {
  return metric_norm(model, x, V);
}

Vec4<double> normalize_velocity(SpacetimeModel const& model, Point const& x,
                                Vec4<double> const& V) {
  double n = metric_norm(model, x, V);
  if (!(n > 0.0)) throw ContractViolation("initial velocity is not timelike");
  Vec4<double> out = V;
  double s = 1.0 / std::sqrt(n);
  for (auto& v : out) v *= s;
  return out;
}

WorldlineResult integrate_worldline(SpacetimeModel const& model, WorldlineState const& init,
                                    double k, IntegratorConfig const& cfg) {
  if (!(cfg.ds > 0.0) || cfg.steps < 1 || cfg.save_every < 1 || cfg.renormalize_every < 0) {
    throw ContractViolation("integrator needs ds > 0, steps >= 1, save_every >= 1");
  }
  double n0 = metric_norm(model, init.x, init.V);
  if (std::abs(n0 - 1.0) > 1e-6) {
    throw ContractViolation(fmt::format("initial state off shell: g(V,V) = {:.17g}", n0));
  }
  WorldlineResult res;
  res.samples.push_back(init);
  res.max_norm_drift = std::abs(n0 - 1.0);

  auto pack = [](WorldlineState const& s) {
    OdeState y{};
    for (int i = 0; i < 4; ++i) {
      y[i] = s.x[i];
      y[4 + i] = s.V[i];
    }
    return y;
  };
  auto unpack = [](OdeState const& y, double s) {
    WorldlineState st;
    for (int i = 0; i < 4; ++i) {
      st.x[i] = y[i];
      st.V[i] = y[4 + i];
    }
    st.s = s;
    return st;
  };
  auto rhs = [&](OdeState const& y, OdeState& dy, double) {
    Point x{y[0], y[1], y[2], y[3]};
    Vec4<double> V{y[4], y[5], y[6], y[7]};
    auto f = first_order(model, x);
    auto a = lorentz_acceleration(f, V, k);
    for (int i = 0; i < 4; ++i) {
      dy[i] = V[i];
      dy[4 + i] = a[i];
    }
  };

  WorldlineState last = init;
  long step = 0;
  auto record = [&](WorldlineState const& st) {
    double drift = std::abs(metric_norm(model, st.x, st.V) - 1.0);
    res.max_norm_drift = std::max(res.max_norm_drift, drift);
    last = st;
    if (step % cfg.save_every == 0 || step == cfg.steps) res.samples.push_back(st);
  };

  try {
    if (cfg.method == IntegratorMethod::kRk4) {
      OdeState y = pack(init);
      OdeState k1, k2, k3, k4, tmp;
      double h = cfg.ds;
      for (step = 1; step <= cfg.steps; ++step) {
        rhs(y, k1, 0.0);
        for (int i = 0; i < 8; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        rhs(tmp, k2, 0.0);
        for (int i = 0; i < 8; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        rhs(tmp, k3, 0.0);
        for (int i = 0; i < 8; ++i) tmp[i] = y[i] + h * k3[i];
        rhs(tmp, k4, 0.0);
        for (int i = 0; i < 8; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        WorldlineState st = unpack(y, init.s + static_cast<double>(step) * h);
        if (cfg.renormalize_every > 0 && step % cfg.renormalize_every == 0) {
          st.V = normalize_velocity(model, st.x, st.V);
          y = pack(st);
        }
        record(st);
      }
    } else {
      namespace odeint = boost::numeric::odeint;
      auto stepper = odeint::make_dense_output(cfg.abs_tol, cfg.rel_tol,
                                               odeint::runge_kutta_dopri5<OdeState>());
      OdeState y = pack(init);
      step = 0;
      odeint::integrate_n_steps(stepper, rhs, y, init.s, cfg.ds, static_cast<std::size_t>(cfg.steps),
                                [&](OdeState const& yy, double s) {
                                  if (step > 0) record(unpack(yy, s));
                                  ++step;
                                });
    }
  } catch (Error const& e) {
    res.error = fmt::format("stopped after s = {:.17g}: {}", last.s, e.what());
    if (res.samples.empty() || res.samples.back().s != last.s) res.samples.push_back(last);
  }
  return res;
}

double rc_transport_residual(SpacetimeModel const& model, WorldlineState const& state,
                             double k) {
  auto d = lorentz_rhs(model, state, k);
  return transport(model, state, k, d.dV, 1.0);
}

double rc_transport_residual(SpacetimeModel const& model, WorldlineState const& state, double k,
                             Vec4<double> const& dV_ds) {
  return transport(model, state, k, dV_ds, 1.0);
}

double rc_transport_residual_as_printed(SpacetimeModel const& model, WorldlineState const& state,
                                        double k, Vec4<double> const& dV_ds) {
  return transport(model, state, k, dV_ds, -1.0);
}

ExchangeResiduals exchange_identities(SpacetimeModel const& model, GeometrySnapshot const& snap,
                                      DustModel const& dust) {
  auto const& geo = snap.geo;
  auto const& x = snap.x;
  double c = model.constants().c;
  double C = model.constants().C();
  ExchangeResiduals r;

  auto divT = lc_divergence(geo, geo.T_uu, geo.dT_uu);
  Vec4<double> J_dn{};
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) J_dn[m] += geo.g[m][n] * geo.J_up[n];
  }
  for (int n = 0; n < 4; ++n) {
    double rhs = 0.0;
    for (int m = 0; m < 4; ++m) rhs += geo.F_uu[m][n] * J_dn[m] / c;
    r.em_divergence = std::max(r.em_divergence, std::abs(divT[n] - rhs));
    r.stress_pair = std::max(r.stress_pair, std::abs(geo.exchange_pair[n]));
  }

  // Dust fields and their first partials.
  auto rho = field_gradient(dust.rho0, x, snap.mode, dust.support);
  auto rq = field_gradient(dust.rhoq, x, snap.mode, dust.support);
  std::array<FieldGradient, 4> V;
  for (int i = 0; i < 4; ++i) V[i] = field_gradient(dust.V_up[i], x, snap.mode, dust.support);
  Vec4<double> Vv{};
  for (int i = 0; i < 4; ++i) Vv[i] = V[i].value;

  double c2 = c * c;
  double div_lc = 0.0;  // ∇̄_μ(ρ₀c²V^μ)
  for (int m = 0; m < 4; ++m) {
    div_lc += c2 * (rho.gradient[m] * Vv[m] + rho.value * V[m].gradient[m]);
    for (int p = 0; p < 4; ++p) div_lc += geo.lc[m][p][m] * c2 * rho.value * Vv[p];
  }
  double Ktrace = 0.0;  // K_{μρ}^μ ρ₀c²V^ρ
  double source = 0.0;  // C ρ₀c² A_μ F_ν^{·μ} V^ν
  for (int m = 0; m < 4; ++m) {
    for (int p = 0; p < 4; ++p) {
      Ktrace += geo.K[m][p][m] * c2 * rho.value * Vv[p];
      source += C * c2 * rho.value * geo.A[m] * geo.F_mixed[p][m] * Vv[p];
    }
  }
  double div_rc = div_lc + Ktrace;
  r.lc_mass_balance = std::abs(div_lc);
  r.rc_mass_balance = std::abs(div_rc + source);
  r.rc_mass_balance_as_printed = std::abs(div_rc - source);
  r.normalization = std::abs(norm_of(geo.g, Vv) - 1.0);

  // Lorentz balance of the flow itself: dV/ds = V^μ ∂_μ V.
  Vec4<double> flow{};
  for (int n = 0; n < 4; ++n) {
    for (int m = 0; m < 4; ++m) flow[n] += Vv[m] * V[n].gradient[m];
  }
  double k = rho.value != 0.0 ? rq.value / (rho.value * c2) : 0.0;
  WorldlineState st{x, Vv, 0.0};
  r.flow_lorentz = transport(model, st, k, flow, 1.0);
  return r;
}

ExchangeResiduals exchange_identities(SpacetimeModel const& model, Point const& x,
                                      DustModel const& dust, DiffMode mode) {
  return exchange_identities(model, make_snapshot(model, x, mode, false), dust);
}

void write_trajectory_csv(std::ostream& out, SpacetimeModel const& model,
                          std::vector<WorldlineState> const& samples) {
  out << "s,x0,x1,x2,x3,V0,V1,V2,V3,norm_residual\n";
  for (auto const& st : samples) {
    double n = metric_norm(model, st.x, st.V) - 1.0;
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                       st.s, st.x[0], st.x[1], st.x[2], st.x[3], st.V[0], st.V[1], st.V[2], st.V[3], n);
  }
}

}  // namespace rcgeom
