// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "rcgeom/expr.hpp"
#include "rcgeom/jet.hpp"

namespace rcgeom {

using Point = std::array<double, 4>;

namespace detail {
struct Program;
}

/// A scalar function of the chart coordinates with exact derivatives.
///
/// Wraps an expression tree together with a compiled postfix program.
/// Evaluation is pure and may run concurrently from any number of threads.
class ScalarField {
 public:
  /// The zero field.
  ScalarField();
  explicit ScalarField(ExprPtr expr);

  ExprPtr const& expr() const noexcept { return expr_; }
  /// True when the expression is the literal constant 0.
  bool is_zero() const noexcept;

  /// Evaluate on any supported number type (double, Jet1<double>,
  /// Jet2<double>, Jet2<Jet1<double>>). Throws DomainError on division by
  /// zero, log/sqrt of a non-positive argument, or a non-finite result.
  template <class N>
  N eval(std::array<N, 4> const& x) const;

  double operator()(Point const& x) const { return eval<double>(x); }

 private:
  ExprPtr expr_;
  std::shared_ptr<detail::Program const> program_;
};

extern template double ScalarField::eval(std::array<double, 4> const&) const;
extern template Jet1<double> ScalarField::eval(std::array<Jet1<double>, 4> const&) const;
extern template Jet2<double> ScalarField::eval(std::array<Jet2<double>, 4> const&) const;
extern template Jet2<Jet1<double>> ScalarField::eval(
    std::array<Jet2<Jet1<double>>, 4> const&) const;

/// Domain predicate: a point is inside when the expression is > 0.
class DomainPredicate {
 public:
  DomainPredicate() = default;  // everywhere
  explicit DomainPredicate(ExprPtr expr) : field_(ScalarField(std::move(expr))) {}

  /// False also when the predicate itself cannot be evaluated.
  bool contains(Point const& x) const noexcept;
  ExprPtr expr() const { return field_ ? field_->expr() : ExprPtr{}; }

 private:
  std::optional<ScalarField> field_;
};

using Matrix4 = std::array<std::array<double, 4>, 4>;

struct FieldDerivatives {
  double value = 0.0;
  std::array<double, 4> gradient{};
  Matrix4 hessian{};
};

/// Value, gradient and Hessian by hyper-dual evaluation (exact to roundoff).
/// Throws DomainError when `x` is outside `domain`.
FieldDerivatives eval_with_derivatives(ScalarField const& f, Point const& x,
                                       DomainPredicate const& domain = {});

/// Default central-difference step: 1e-4 * max(1, |x_μ|) per axis.
std::array<double, 4> default_fd_step(Point const& x);

/// Central-difference gradient and Hessian (value is f(x)). Every stencil
/// point must lie inside `domain`, otherwise DomainError.
FieldDerivatives finite_difference_derivatives(
    ScalarField const& f, Point const& x,
    std::optional<std::array<double, 4>> h = std::nullopt,
    DomainPredicate const& domain = {});

}  // namespace rcgeom
