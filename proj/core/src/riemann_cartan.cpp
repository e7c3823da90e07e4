// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rcgeom/riemann_cartan.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "rcgeom/error.hpp"

namespace rcgeom {

namespace {

Tensor lower_last(Tensor const& mixed, MetricAtPoint const& m) {
  Tensor out({Variance::Down, Variance::Down, Variance::Down});
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int l = 0; l < 4; ++l) {
        double v = 0.0;
        for (int k = 0; k < 4; ++k) v += m.g_dd(k, l) * mixed(a, b, k);
        out(a, b, l) = v;
      }
    }
  }
  return out;
}

Tensor raise_last(Tensor const& down, MetricAtPoint const& m) {
  Tensor out({Variance::Down, Variance::Down, Variance::Up});
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int l = 0; l < 4; ++l) {
        double v = 0.0;
        for (int k = 0; k < 4; ++k) v += m.g_uu(l, k) * down(a, b, k);
        out(a, b, l) = v;
      }
    }
  }
  return out;
}

void require_mixed3(Tensor const& t) {
  if (t.rank() != 3 || t.variance(0) != Variance::Down || t.variance(1) != Variance::Down ||
      t.variance(2) != Variance::Up) {
    throw ContractViolation("expected a (Down, Down, Up) tensor");
  }
}

}  // namespace

Contorsion make_contorsion(Tensor const& mixed, MetricAtPoint const& m) {
  require_mixed3(mixed);
  Contorsion k;
  k.mixed = mixed;
  k.all_down = lower_last(mixed, m);
  double tol = 1e-12 * std::max(1.0, max_abs(k.all_down));
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int l = 0; l < 4; ++l) {
        if (std::abs(k.all_down(a, b, l) + k.all_down(a, l, b)) > tol) {
          throw ContractViolation(
              fmt::format("contorsion not antisymmetric in its last pair at ({},{},{})", a, b, l));
        }
      }
    }
  }
  return k;
}

Contorsion contorsion_from_potential(SpacetimeModel const& model, Point const& x, DiffMode mode) {
  auto geo = compute_geometry(sample_inputs(model, x, mode), model.constants());
  Contorsion k;
  k.mixed = to_tensor(geo.K, Variance::Down, Variance::Down, Variance::Up);
  k.all_down = to_tensor(geo.K_down, Variance::Down, Variance::Down, Variance::Down);
  return k;
}

Contorsion contorsion_from_torsion(Torsion const& t, MetricAtPoint const& m) {
  require_mixed3(t.mixed);
  Tensor T = lower_last(t.mixed, m);
  Tensor Kd({Variance::Down, Variance::Down, Variance::Down});
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int l = 0; l < 4; ++l) Kd(a, b, l) = 0.5 * (T(a, b, l) - T(a, l, b) - T(b, l, a));
    }
  }
  Contorsion k;
  k.all_down = Kd;
  k.mixed = raise_last(Kd, m);
  return k;
}

Torsion torsion_from_contorsion(Contorsion const& k, MetricAtPoint const& m) {
  require_mixed3(k.mixed);
  Torsion t;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int l = 0; l < 4; ++l) t.mixed(a, b, l) = k.mixed(a, b, l) - k.mixed(b, a, l);
    }
  }
  Contorsion back = contorsion_from_torsion(t, m);
  double miss = max_abs_diff(back.mixed, k.mixed);
  if (miss > 1e-8 * std::max(1.0, max_abs(k.mixed))) {
    throw ConventionViolation(fmt::format("torsion/contorsion round trip misses by {:.3g}", miss));
  }
  return t;
}

ConnectionCoefficients full_connection(ConnectionCoefficients const& lc, Contorsion const& k) {
  if (!lc.torsionless) throw ContractViolation("base connection must be torsion-free");
  ConnectionCoefficients out;
  out.gamma = lc.gamma + k.mixed;
  out.torsionless = max_abs(k.mixed) == 0.0;
  return out;
}

RcCurvature rc_curvature(SpacetimeModel const& model, Point const& x, DiffMode mode) {
  auto geo = compute_geometry(sample_inputs(model, x, mode), model.constants());
  RcCurvature out;
  auto v = Variance::Down;
  out.riemann = to_tensor(geo.riemann_rc, v, v, v, Variance::Up);
  out.ricci = to_tensor(geo.ricci_rc, v, v);
  out.scalar = geo.scalar_rc;
  Arr2<double> G{};
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) G[m][n] = geo.ricci_rc[m][n] - 0.5 * geo.g[m][n] * geo.scalar_rc;
  }
  out.einstein = to_tensor(G, v, v);
  Tensor split = to_tensor(geo.riemann_rc_split, v, v, v, Variance::Up);
  out.decomposition_residual = max_abs_diff(out.riemann, split);
  out.quadratic_residual = max_abs(to_tensor(geo.quadratic_pair, v, v, v, Variance::Up));
  if (out.decomposition_residual > 1e-6) {
    throw ConventionViolation(fmt::format("curvature decomposition misses by {:.3g}",
                                          out.decomposition_residual));
  }
  return out;
}

ScalarCurvatureSplit scalar_curvature_split(Geometry<double> const& geo,
                                            PhysicalConstants const& k) {
  ScalarCurvatureSplit s;
  s.R = geo.scalar_rc;
  s.R_bar = geo.scalar_lc;
  s.em_term = k.C() * geo.F2;
  double AJ = 0.0;
  for (int m = 0; m < 4; ++m) AJ += geo.A[m] * geo.J_up[m];
  s.coupling_term = 8.0 * std::numbers::pi * k.C() / k.c * AJ;
  s.trace_form = geo.scalar_lc + 2.0 * geo.div_k_trace;
  return s;
}

ScalarCurvatureSplit scalar_curvature_split(SpacetimeModel const& model, Point const& x,
                                            DiffMode mode) {
  auto geo = compute_geometry(sample_inputs(model, x, mode), model.constants());
  auto s = scalar_curvature_split(geo, model.constants());
  double miss = std::max(std::abs(s.R - (s.R_bar + s.em_term + s.coupling_term)),
                         std::abs(s.R - s.trace_form));
  if (miss > 1e-6) {
    throw ConventionViolation(fmt::format("scalar curvature split misses by {:.3g}", miss));
  }
  return s;
}

}  // namespace rcgeom
