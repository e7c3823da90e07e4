// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rcgeom/field_jets.hpp"

#include <cmath>

#include "rcgeom/error.hpp"
#include "rcgeom/spacetime.hpp"

namespace rcgeom {

namespace {

// Value + gradient of f, and for each axis the partial + its gradient.
struct Second {
  Jet1<double> value;
  Vec4<Jet1<double>> partial;
};

Second second_order(ScalarField const& f, Point const& x, DiffMode mode,
                    DomainPredicate const& domain) {
  Second out;
  if (f.is_zero()) return out;
  FieldDerivatives d = mode == DiffMode::kDual
                           ? eval_with_derivatives(f, x, domain)
                           : finite_difference_derivatives(f, x, std::nullopt, domain);
  out.value = Jet1<double>(d.value, d.gradient);
  for (int a = 0; a < 4; ++a) out.partial[a] = Jet1<double>(d.gradient[a], d.hessian[a]);
  return out;
}

struct Third {
  Jet1<Jet1<double>> value;
  Vec4<Jet1<Jet1<double>>> partial;
};

Third third_order(ScalarField const& f, std::array<Jet2<Jet1<double>>, 4> const& seeded) {
  Third out;
  if (f.is_zero()) return out;
  Jet2<Jet1<double>> r = f.eval(seeded);
  out.value = Jet1<Jet1<double>>(r.v, r.d);
  for (int a = 0; a < 4; ++a) {
    std::array<Jet1<double>, 4> row;
    for (int b = 0; b < 4; ++b) row[b] = r.hess(a, b);
    out.partial[a] = Jet1<Jet1<double>>(r.d[a], row);
  }
  return out;
}

}  // namespace

FieldInputs<double> sample_inputs(SpacetimeModel const& model, Point const& x, DiffMode mode) {
  if (!model.domain().contains(x)) throw DomainError("point outside the chart domain");
  FieldInputs<double> in;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu; nu < 4; ++nu) {
      Second s = second_order(model.g(mu, nu), x, mode, model.domain());
      in.g[mu][nu] = in.g[nu][mu] = s.value;
      for (int a = 0; a < 4; ++a) in.dg[a][mu][nu] = in.dg[a][nu][mu] = s.partial[a];
    }
    Second s = second_order(model.A(mu), x, mode, model.domain());
    in.A[mu] = s.value;
    for (int a = 0; a < 4; ++a) in.dA[a][mu] = s.partial[a];
  }
  return in;
}

FieldInputs<Jet1<double>> sample_inputs_third(SpacetimeModel const& model, Point const& x) {
  if (!model.domain().contains(x)) throw DomainError("point outside the chart domain");
  std::array<Jet2<Jet1<double>>, 4> seeded;
  for (int i = 0; i < 4; ++i) {
    seeded[i] = Jet2<Jet1<double>>::variable(Jet1<double>::variable(x[i], i), i);
  }
  FieldInputs<Jet1<double>> in;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu; nu < 4; ++nu) {
      Third s = third_order(model.g(mu, nu), seeded);
      in.g[mu][nu] = in.g[nu][mu] = s.value;
      for (int a = 0; a < 4; ++a) in.dg[a][mu][nu] = in.dg[a][nu][mu] = s.partial[a];
    }
    Third s = third_order(model.A(mu), seeded);
    in.A[mu] = s.value;
    for (int a = 0; a < 4; ++a) in.dA[a][mu] = s.partial[a];
  }
  return in;
}

std::array<double, 4> third_order_fd_step(Point const& x) {
  std::array<double, 4> h{};
  for (int i = 0; i < 4; ++i) h[i] = 1e-3 * std::max(1.0, std::abs(x[i]));
  return h;
}

FieldGradient field_gradient(ScalarField const& f, Point const& x, DiffMode mode,
                             DomainPredicate const& domain) {
  FieldGradient out;
  if (f.is_zero()) return out;
  if (mode == DiffMode::kDual) {
    if (!domain.contains(x)) throw DomainError("point outside the chart domain");
    std::array<Jet1<double>, 4> seeded;
    for (int i = 0; i < 4; ++i) seeded[i] = Jet1<double>::variable(x[i], i);
    Jet1<double> r = f.eval(seeded);
    out.value = r.v;
    out.gradient = r.d;
    return out;
  }
  FieldDerivatives d = finite_difference_derivatives(f, x, std::nullopt, domain);
  out.value = d.value;
  out.gradient = d.gradient;
  return out;
}

}  // namespace rcgeom
