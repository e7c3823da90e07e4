// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

// Metric and potential sampled at one point together with their partials.

#pragma once

#include <array>

#include "rcgeom/field.hpp"
#include "rcgeom/jet.hpp"

namespace rcgeom {

class SpacetimeModel;

enum class DiffMode { kDual, kFd };

template <class T>
using Vec4 = std::array<T, 4>;
template <class T>
using Arr2 = std::array<Vec4<T>, 4>;
template <class T>
using Arr3 = std::array<Arr2<T>, 4>;
template <class T>
using Arr4 = std::array<Arr3<T>, 4>;

/// Every entry is a Jet1<S>: the value plus its coordinate gradient. With
/// S = double this is enough for curvature; with S = Jet1<double> each value
/// also carries the next derivative, which is what third-order checks use.
template <class S>
struct FieldInputs {
  Arr2<Jet1<S>> g{};   // g_{μν}
  Arr3<Jet1<S>> dg{};  // ∂_α g_{μν} at [α][μ][ν]
  Vec4<Jet1<S>> A{};   // A_μ
  Arr2<Jet1<S>> dA{};  // ∂_α A_μ at [α][μ]
};

/// Throws DomainError when x (or, in fd mode, a stencil point) is outside
/// the model's domain.
FieldInputs<double> sample_inputs(SpacetimeModel const& model, Point const& x, DiffMode mode);

/// Dual mode only; carries third derivatives of the fields.
FieldInputs<Jet1<double>> sample_inputs_third(SpacetimeModel const& model, Point const& x);

/// Step used when third-order quantities are differenced in fd mode.
std::array<double, 4> third_order_fd_step(Point const& x);

/// Value and first partials of a scalar field: exact, or by central
/// differences with the default step.
struct FieldGradient {
  double value = 0.0;
  std::array<double, 4> gradient{};
};
FieldGradient field_gradient(ScalarField const& f, Point const& x, DiffMode mode,
                             DomainPredicate const& domain = {});

}  // namespace rcgeom
