// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rcgeom/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "rcgeom/error.hpp"

namespace rcgeom {

namespace {

// Cofactor inverse; works for any field-like number type.
template <class T>
Arr2<T> inverse4(Arr2<T> const& a, T& det) {
  T s0 = a[0][0] * a[1][1] - a[1][0] * a[0][1];
  T s1 = a[0][0] * a[1][2] - a[1][0] * a[0][2];
  T s2 = a[0][0] * a[1][3] - a[1][0] * a[0][3];
  T s3 = a[0][1] * a[1][2] - a[1][1] * a[0][2];
  T s4 = a[0][1] * a[1][3] - a[1][1] * a[0][3];
  T s5 = a[0][2] * a[1][3] - a[1][2] * a[0][3];
  T c5 = a[2][2] * a[3][3] - a[3][2] * a[2][3];
  T c4 = a[2][1] * a[3][3] - a[3][1] * a[2][3];
  T c3 = a[2][1] * a[3][2] - a[3][1] * a[2][2];
  T c2 = a[2][0] * a[3][3] - a[3][0] * a[2][3];
  T c1 = a[2][0] * a[3][2] - a[3][0] * a[2][2];
  T c0 = a[2][0] * a[3][1] - a[3][0] * a[2][1];
  det = s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;

  double scale = 0.0;
  for (auto const& row : a) {
    for (auto const& e : row) scale = std::max(scale, std::abs(scalar_value(e)));
  }
  double d = scalar_value(det);
  if (!(std::abs(d) >= 1e-10 * scale * scale * scale * scale) || scale == 0.0) {
    throw DegenerateMetric("metric determinant vanishes");
  }
  if (!(d < 0.0)) throw SignatureError("metric determinant is not negative");

  Arr2<T> r;
  r[0][0] = a[1][1] * c5 - a[1][2] * c4 + a[1][3] * c3;
  r[0][1] = -a[0][1] * c5 + a[0][2] * c4 - a[0][3] * c3;
  r[0][2] = a[3][1] * s5 - a[3][2] * s4 + a[3][3] * s3;
  r[0][3] = -a[2][1] * s5 + a[2][2] * s4 - a[2][3] * s3;
  r[1][0] = -a[1][0] * c5 + a[1][2] * c2 - a[1][3] * c1;
  r[1][1] = a[0][0] * c5 - a[0][2] * c2 + a[0][3] * c1;
  r[1][2] = -a[3][0] * s5 + a[3][2] * s2 - a[3][3] * s1;
  r[1][3] = a[2][0] * s5 - a[2][2] * s2 + a[2][3] * s1;
  r[2][0] = a[1][0] * c4 - a[1][1] * c2 + a[1][3] * c0;
  r[2][1] = -a[0][0] * c4 + a[0][1] * c2 - a[0][3] * c0;
  r[2][2] = a[3][0] * s4 - a[3][1] * s2 + a[3][3] * s0;
  r[2][3] = -a[2][0] * s4 + a[2][1] * s2 - a[2][3] * s0;
  r[3][0] = -a[1][0] * c3 + a[1][1] * c1 - a[1][2] * c0;
  r[3][1] = a[0][0] * c3 - a[0][1] * c1 + a[0][2] * c0;
  r[3][2] = -a[3][0] * s3 + a[3][1] * s1 - a[3][2] * s0;
  r[3][3] = a[2][0] * s3 - a[2][1] * s1 + a[2][2] * s0;
  T inv = T(1.0) / det;
  Arr2<T> out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out[i][j] = (r[i][j] + r[j][i]) * (inv * 0.5);
  }
  return out;
}

template <class S>
Arr4<S> curvature_of(Arr3<S> const& G, Arr4<S> const& dG) {
  Arr4<S> R{};
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      for (int l = 0; l < 4; ++l) {
        for (int c = 0; c < 4; ++c) {
          S v = dG[m][n][l][c] - dG[n][m][l][c];
          for (int r = 0; r < 4; ++r) {
            v += G[m][r][c] * G[n][l][r] - G[n][r][c] * G[m][l][r];
          }
          R[m][n][l][c] = v;
        }
      }
    }
  }
  return R;
}

template <class S>
Arr2<S> ricci_of(Arr4<S> const& R) {
  Arr2<S> out{};
  for (int n = 0; n < 4; ++n) {
    for (int l = 0; l < 4; ++l) {
      S v{};
      for (int m = 0; m < 4; ++m) v += R[m][n][l][m];
      out[n][l] = v;
    }
  }
  return out;
}

template <class T>
Arr2<T> raise_both(Arr2<T> const& gi, Arr2<T> const& X) {
  Arr2<T> half{};
  for (int m = 0; m < 4; ++m) {
    for (int b = 0; b < 4; ++b) {
      T v{};
      for (int a = 0; a < 4; ++a) v += gi[m][a] * X[a][b];
      half[m][b] = v;
    }
  }
  Arr2<T> out{};
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      T v{};
      for (int b = 0; b < 4; ++b) v += half[m][b] * gi[n][b];
      out[m][n] = v;
    }
  }
  return out;
}

template <class S>
void split(Arr3<Jet1<S>> const& src, Arr3<S>& value, Arr4<S>& partial) {
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      for (int l = 0; l < 4; ++l) {
        value[m][n][l] = src[m][n][l].v;
        for (int a = 0; a < 4; ++a) partial[a][m][n][l] = src[m][n][l].d[a];
      }
    }
  }
}

template <class S>
void split(Arr2<Jet1<S>> const& src, Arr2<S>& value, Arr3<S>& partial) {
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      value[m][n] = src[m][n].v;
      for (int a = 0; a < 4; ++a) partial[a][m][n] = src[m][n].d[a];
    }
  }
}

}  // namespace

template <class S>
Geometry<S> compute_geometry(FieldInputs<S> const& in, PhysicalConstants const& k) {
  using J = Jet1<S>;
  constexpr double kPi = std::numbers::pi;
  double const C = k.C();
  double const c = k.c;
  Geometry<S> out;

  J detJ;
  Arr2<J> gi = inverse4(in.g, detJ);
  J sqrtg = sqrt(-detJ);

  // Christoffel symbols with their partials.
  Arr3<J> lc{};
  for (int m = 0; m < 4; ++m) {
    for (int n = m; n < 4; ++n) {
      for (int l = 0; l < 4; ++l) {
        J v{};
        for (int a = 0; a < 4; ++a) {
          v += gi[l][a] * (in.dg[m][n][a] + in.dg[n][m][a] - in.dg[a][m][n]);
        }
        lc[m][n][l] = lc[n][m][l] = v * 0.5;
      }
    }
  }

  // Field strength in all layouts.
  Arr2<J> F{}, Fmix{};
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) F[m][n] = in.dA[m][n] - in.dA[n][m];
  }
  for (int n = 0; n < 4; ++n) {
    for (int l = 0; l < 4; ++l) {
      J v{};
      for (int a = 0; a < 4; ++a) v += gi[l][a] * F[n][a];
      Fmix[n][l] = v;
    }
  }
  Arr2<J> Fuu{};
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      J v{};
      for (int a = 0; a < 4; ++a) v += gi[m][a] * Fmix[a][n];
      Fuu[m][n] = v;
    }
  }
  J F2{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) F2 += F[a][b] * Fuu[a][b];
  }

  // Contorsion of the ansatz and its trace.
  Arr3<J> K{}, Kdown{}, gamma{};
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      for (int l = 0; l < 4; ++l) {
        K[m][n][l] = in.A[m] * Fmix[n][l] * (-C);
        Kdown[m][n][l] = in.A[m] * F[n][l] * (-C);
        gamma[m][n][l] = lc[m][n][l] + K[m][n][l];
      }
    }
  }
  Vec4<J> ktrace{};
  for (int m = 0; m < 4; ++m) {
    J v{};
    for (int n = 0; n < 4; ++n) {
      for (int a = 0; a < 4; ++a) {
        for (int l = 0; l < 4; ++l) v += gi[n][a] * gi[m][l] * Kdown[a][n][l];
      }
    }
    ktrace[m] = v;
  }

  // Electromagnetic stress-energy.
  Arr2<J> T{};
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      J v{};
      for (int b = 0; b < 4; ++b) v += Fmix[m][b] * F[n][b];
      T[m][n] = (in.g[m][n] * F2 * 0.25 - v) * (1.0 / (4.0 * kPi));
    }
  }
  Arr2<J> Tuu = raise_both(gi, T);

  // Densitized field for the determinant form of the divergence.
  Arr2<J> P{};
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) P[m][n] = sqrtg * Fuu[m][n];
  }

  //-------------------------------------------------------------------------//
  // Values and partials.
  //-------------------------------------------------------------------------//
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      out.g[m][n] = in.g[m][n].v;
      out.g_inv[m][n] = gi[m][n].v;
      for (int a = 0; a < 4; ++a) out.dg[a][m][n] = in.dg[a][m][n].v;
    }
    out.A[m] = in.A[m].v;
    for (int a = 0; a < 4; ++a) out.dA[a][m] = in.dA[a][m].v;
  }
  out.det = detJ.v;
  out.sqrt_neg_det = sqrtg.v;
  split(lc, out.lc, out.d_lc);
  split(K, out.K, out.dK);
  split(gamma, out.gamma, out.d_gamma);
  split(F, out.F_dd, out.dF_dd);
  split(Fuu, out.F_uu, out.dF_uu);
  split(Tuu, out.T_uu, out.dT_uu);
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      out.F_mixed[m][n] = Fmix[m][n].v;
      out.T_dd[m][n] = T[m][n].v;
      for (int l = 0; l < 4; ++l) out.K_down[m][n][l] = Kdown[m][n][l].v;
    }
  }
  out.F2 = F2.v;

  auto const& G = out.lc;
  auto const& Kv = out.K;
  auto const& Gam = out.gamma;

  // Levi-Civita curvature.
  out.riemann_lc = curvature_of(G, out.d_lc);
  out.ricci_lc = ricci_of(out.riemann_lc);
  S R{};
  for (int n = 0; n < 4; ++n) {
    for (int l = 0; l < 4; ++l) R += out.g_inv[n][l] * out.ricci_lc[n][l];
  }
  out.scalar_lc = R;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) out.einstein_dd[m][n] = out.ricci_lc[m][n] - out.g[m][n] * R * 0.5;
  }
  out.einstein_uu = raise_both(out.g_inv, out.einstein_dd);

  // Current three ways, and the pair that makes them agree.
  for (int n = 0; n < 4; ++n) {
    S div_det{}, div_lc{}, div_rc{}, pair{}, xpair{};
    for (int m = 0; m < 4; ++m) {
      div_det += P[m][n].d[m];
      div_lc += out.dF_uu[m][m][n];
      for (int r = 0; r < 4; ++r) {
        div_lc += G[m][r][m] * out.F_uu[r][n] + G[m][r][n] * out.F_uu[m][r];
        div_rc += Gam[m][r][m] * out.F_uu[r][n] + Gam[m][r][n] * out.F_uu[m][r];
        pair += Kv[m][r][m] * out.F_uu[r][n] + Kv[m][r][n] * out.F_uu[m][r];
        xpair += Kv[m][r][m] * out.T_uu[r][n] + Kv[m][r][n] * out.T_uu[m][r];
      }
      div_rc += out.dF_uu[m][m][n];
    }
    out.sqrt_neg_det_J[n] = div_det * (c / (4.0 * kPi));
    out.J_up[n] = out.sqrt_neg_det_J[n] / out.sqrt_neg_det;
    out.J_up_christoffel[n] = div_lc * (c / (4.0 * kPi));
    out.J_up_rc[n] = div_rc * (c / (4.0 * kPi));
    out.rc_pair[n] = pair;
    out.exchange_pair[n] = xpair;
  }

  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      for (int l = 0; l < 4; ++l) {
        auto const& F0 = out.F_dd;
        auto const& A0 = out.A;
        out.chern_simons[m][n][l] =
            (A0[m] * F0[n][l] + A0[l] * F0[m][n] + A0[n] * F0[l][m]) * (1.0 / 6.0);
        out.torsion[m][n][l] = Gam[m][n][l] - Gam[n][m][l];
      }
    }
  }

  // Riemann-Cartan curvature directly and by decomposition.
  out.riemann_rc = curvature_of(Gam, out.d_gamma);
  auto cov_K = [&](int m, int n, int l, int ch) {
    S v = out.dK[m][n][l][ch];
    for (int r = 0; r < 4; ++r) {
      v += G[m][r][ch] * Kv[n][l][r] - G[m][n][r] * Kv[r][l][ch] - G[m][l][r] * Kv[n][r][ch];
    }
    return v;
  };
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      for (int l = 0; l < 4; ++l) {
        for (int ch = 0; ch < 4; ++ch) {
          S q{};
          for (int r = 0; r < 4; ++r) q += Kv[m][r][ch] * Kv[n][l][r] - Kv[n][r][ch] * Kv[m][l][r];
          out.quadratic_pair[m][n][l][ch] = q;
          out.riemann_rc_split[m][n][l][ch] =
              out.riemann_lc[m][n][l][ch] + cov_K(m, n, l, ch) - cov_K(n, m, l, ch) + q;
        }
      }
    }
  }
  out.ricci_rc = ricci_of(out.riemann_rc);
  S Rrc{};
  for (int n = 0; n < 4; ++n) {
    for (int l = 0; l < 4; ++l) Rrc += out.g_inv[n][l] * out.ricci_rc[n][l];
  }
  out.scalar_rc = Rrc;

  S divk{};
  for (int m = 0; m < 4; ++m) {
    out.k_trace[m] = ktrace[m].v;
    divk += ktrace[m].d[m];
  }
  for (int m = 0; m < 4; ++m) {
    for (int r = 0; r < 4; ++r) divk += G[m][r][m] * out.k_trace[r];
  }
  out.div_k_trace = divk;
  return out;
}

template Geometry<double> compute_geometry(FieldInputs<double> const&, PhysicalConstants const&);
template Geometry<Jet1<double>> compute_geometry(FieldInputs<Jet1<double>> const&,
                                                 PhysicalConstants const&);

GeometrySnapshot make_snapshot(SpacetimeModel const& model, Point const& x, DiffMode mode,
                               bool third_order) {
  GeometrySnapshot s;
  s.x = x;
  s.mode = mode;
  s.geo = compute_geometry(sample_inputs(model, x, mode), model.constants());
  if (!third_order) return s;
  if (mode == DiffMode::kDual) {
    auto g1 = std::make_unique<Geometry<Jet1<double>>>(
        compute_geometry(sample_inputs_third(model, x), model.constants()));
    for (int a = 0; a < 4; ++a) {
      for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) s.d_einstein_uu[a][m][n] = g1->einstein_uu[m][n].d[a];
        s.d_sqrt_neg_det_J[a][m] = g1->sqrt_neg_det_J[m].d[a];
      }
    }
  } else {
    auto h = third_order_fd_step(x);
    for (int a = 0; a < 4; ++a) {
      Point xp = x;
      Point xm = x;
      xp[a] += h[a];
      xm[a] -= h[a];
      auto gp = compute_geometry(sample_inputs(model, xp, mode), model.constants());
      auto gm = compute_geometry(sample_inputs(model, xm, mode), model.constants());
      for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
          s.d_einstein_uu[a][m][n] = (gp.einstein_uu[m][n] - gm.einstein_uu[m][n]) / (2 * h[a]);
        }
        s.d_sqrt_neg_det_J[a][m] = (gp.sqrt_neg_det_J[m] - gm.sqrt_neg_det_J[m]) / (2 * h[a]);
      }
    }
  }
  s.has_third = true;
  return s;
}

Vec4<double> lc_divergence(Geometry<double> const& geo, Arr2<double> const& X,
                           Arr3<double> const& dX) {
  Vec4<double> out{};
  for (int n = 0; n < 4; ++n) {
    double v = 0.0;
    for (int m = 0; m < 4; ++m) {
      v += dX[m][m][n];
      for (int r = 0; r < 4; ++r) v += geo.lc[m][r][m] * X[r][n] + geo.lc[m][r][n] * X[m][r];
    }
    out[n] = v;
  }
  return out;
}

double current_conservation(GeometrySnapshot const& s) {
  if (!s.has_third) throw ContractViolation("snapshot lacks third-order data");
  double v = 0.0;
  for (int n = 0; n < 4; ++n) v += s.d_sqrt_neg_det_J[n][n];
  return v / s.geo.sqrt_neg_det;
}

Vec4<double> einstein_divergence(GeometrySnapshot const& s) {
  if (!s.has_third) throw ContractViolation("snapshot lacks third-order data");
  return lc_divergence(s.geo, s.geo.einstein_uu, s.d_einstein_uu);
}

Arr2<double> invert_metric(Arr2<double> const& g, double& det) { return inverse4(g, det); }

Tensor to_tensor(Vec4<double> const& a, Variance v0) {
  Tensor t({v0});
  for (int i = 0; i < 4; ++i) t(i) = a[i];
  return t;
}

Tensor to_tensor(Arr2<double> const& a, Variance v0, Variance v1) {
  Tensor t({v0, v1});
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) t(i, j) = a[i][j];
  }
  return t;
}

Tensor to_tensor(Arr3<double> const& a, Variance v0, Variance v1, Variance v2) {
  Tensor t({v0, v1, v2});
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) t(i, j, k) = a[i][j][k];
    }
  }
  return t;
}

Tensor to_tensor(Arr4<double> const& a, Variance v0, Variance v1, Variance v2, Variance v3) {
  Tensor t({v0, v1, v2, v3});
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) t(i, j, k, l) = a[i][j][k][l];
      }
    }
  }
  return t;
}

Arr3<double> to_array3(Tensor const& t) {
  if (t.rank() != 3) throw ContractViolation("expected a rank-3 tensor");
  Arr3<double> a{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) a[i][j][k] = t(i, j, k);
    }
  }
  return a;
}

MetricAtPoint metric_of(Geometry<double> const& geo) {
  MetricAtPoint m;
  m.g_dd = to_tensor(geo.g, Variance::Down, Variance::Down);
  m.g_uu = to_tensor(geo.g_inv, Variance::Up, Variance::Up);
  m.det_g = geo.det;
  m.sqrt_neg_det = geo.sqrt_neg_det;
  return m;
}

}  // namespace rcgeom
