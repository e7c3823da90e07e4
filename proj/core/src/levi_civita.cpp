// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rcgeom/levi_civita.hpp"

#include "rcgeom/error.hpp"

namespace rcgeom {

MetricAtPoint metric_at(SpacetimeModel const& model, Point const& x) {
  if (!model.domain().contains(x)) throw DomainError("point outside the chart domain");
  Tensor g({Variance::Down, Variance::Down});
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) g(m, n) = model.g(m, n)(x);
  }
  return make_validated_metric(g);
}

ConnectionCoefficients christoffel(SpacetimeModel const& model, Point const& x, DiffMode mode) {
  auto geo = compute_geometry(sample_inputs(model, x, mode), model.constants());
  ConnectionCoefficients out;
  out.gamma = to_tensor(geo.lc, Variance::Down, Variance::Down, Variance::Up);
  out.torsionless = true;
  return out;
}

CurvatureAtPoint lc_curvature(SpacetimeModel const& model, Point const& x, DiffMode mode) {
  auto geo = compute_geometry(sample_inputs(model, x, mode), model.constants());
  CurvatureAtPoint out;
  out.riemann = to_tensor(geo.riemann_lc, Variance::Down, Variance::Down, Variance::Down,
                          Variance::Up);
  out.ricci = to_tensor(geo.ricci_lc, Variance::Down, Variance::Down);
  out.scalar = geo.scalar_lc;
  out.einstein = to_tensor(geo.einstein_dd, Variance::Down, Variance::Down);
  return out;
}

TensorField TensorField::parse(SpacetimeModel const& model, std::vector<Variance> variance,
                               std::vector<std::string> const& components) {
  std::size_t expected = std::size_t{1} << (2 * variance.size());
  if (variance.size() > static_cast<std::size_t>(kMaxRank) || components.size() != expected) {
    throw ContractViolation("tensor field needs 4^rank components");
  }
  TensorField t;
  t.variance = std::move(variance);
  auto params = model.expression_parameters();
  for (auto const& src : components) {
    t.components.emplace_back(rcgeom::parse(src, model.chart(), params));
  }
  return t;
}

TensorSample sample_tensor(TensorField const& t, Point const& x, DiffMode mode,
                           DomainPredicate const& domain) {
  std::span<Variance const> var(t.variance.data(), t.variance.size());
  TensorSample s{Tensor(var), {Tensor(var), Tensor(var), Tensor(var), Tensor(var)}};
  if (static_cast<int>(t.components.size()) != s.value.size()) {
    throw ContractViolation("tensor field needs 4^rank components");
  }
  for (int k = 0; k < s.value.size(); ++k) {
    auto d = field_gradient(t.components[static_cast<std::size_t>(k)], x, mode, domain);
    s.value.at_flat(k) = d.value;
    for (int a = 0; a < 4; ++a) s.partial[a].at_flat(k) = d.gradient[a];
  }
  return s;
}

Tensor covariant_derivative(Tensor const& t, std::array<Tensor, 4> const& partial,
                            Arr3<double> const& gamma) {
  if (t.rank() >= kMaxRank) throw ContractViolation("covariant derivative would exceed rank 4");
  std::vector<Variance> var{Variance::Down};
  for (auto v : t.variances()) var.push_back(v);
  Tensor out(std::span<Variance const>(var.data(), var.size()));
  int r = t.rank();
  for (int a = 0; a < 4; ++a) {
    for (int k = 0; k < t.size(); ++k) {
      auto idx = t.unflatten(k);
      double v = partial[a].at_flat(k);
      for (int s = 0; s < r; ++s) {
        auto j = idx;
        for (int d = 0; d < 4; ++d) {
          j[s] = d;
          double td = t.at_flat(t.flatten(j));
          if (t.variance(s) == Variance::Up) {
            v += gamma[a][d][idx[s]] * td;
          } else {
            v -= gamma[a][idx[s]][d] * td;
          }
        }
      }
      out.at_flat((a << (2 * r)) | k) = v;
    }
  }
  return out;
}

Tensor lc_covariant_derivative(SpacetimeModel const& model, Point const& x, TensorField const& t,
                               DiffMode mode) {
  auto geo = compute_geometry(sample_inputs(model, x, mode), model.constants());
  auto s = sample_tensor(t, x, mode, model.domain());
  return covariant_derivative(s.value, s.partial, geo.lc);
}

DivergenceForms lc_divergence_antisym2(SpacetimeModel const& model, Point const& x,
                                       TensorField const& X_uu, DiffMode mode) {
  if (X_uu.variance != std::vector<Variance>{Variance::Up, Variance::Up}) {
    throw ContractViolation("divergence needs a rank-2 contravariant field");
  }
  auto geo = compute_geometry(sample_inputs(model, x, mode), model.constants());
  auto s = sample_tensor(X_uu, x, mode, model.domain());

  // ∂_α (-det g)^{1/2} = ½ (-det g)^{1/2} g^{μν} ∂_α g_{μν}
  std::array<double, 4> d_sqrt{};
  for (int a = 0; a < 4; ++a) {
    double tr = 0.0;
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) tr += geo.g_inv[m][n] * geo.dg[a][m][n];
    }
    d_sqrt[a] = 0.5 * geo.sqrt_neg_det * tr;
  }
  DivergenceForms out;
  Arr2<double> X{};
  Arr3<double> dX{};
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      X[m][n] = s.value(m, n);
      for (int a = 0; a < 4; ++a) dX[a][m][n] = s.partial[a](m, n);
    }
  }
  for (int n = 0; n < 4; ++n) {
    double v = 0.0;
    for (int m = 0; m < 4; ++m) v += d_sqrt[m] * X[m][n] + geo.sqrt_neg_det * dX[m][m][n];
    out.determinant_form(n) = v / geo.sqrt_neg_det;
  }
  auto chr = lc_divergence(geo, X, dX);
  for (int n = 0; n < 4; ++n) out.christoffel_form(n) = chr[n];
  return out;
}

}  // namespace rcgeom
