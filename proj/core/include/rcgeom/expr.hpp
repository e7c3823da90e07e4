// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

// Arithmetic expressions over chart coordinates.
//
// Grammar (EBNF):
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := "-" factor | base ("^" factor)?
//   base   := number | ident | ident "(" expr ")" | "(" expr ")"
//   number := decimal with optional exponent
//   ident  := [A-Za-z_][A-Za-z0-9_]*

#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rcgeom {

enum class ExprKind {
  kConstant,
  kCoordinate,
  kParameter,
  kNeg,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kPow,
  kCall,
};

enum class Function { kSin, kCos, kTan, kSinh, kCosh, kTanh, kExp, kLog, kSqrt };

struct Expr;
using ExprPtr = std::shared_ptr<Expr const>;

/// Immutable expression node. Parameters keep their name for printing and
/// carry the value bound at parse time.
struct Expr {
  ExprKind kind = ExprKind::kConstant;
  double value = 0.0;        // constant, or bound parameter value
  int coordinate = -1;       // kCoordinate
  std::string name;          // kParameter
  Function function = Function::kSin;  // kCall
  std::vector<ExprPtr> args;
};

/// Named scalar parameters available to expressions (M, q, E, G, c, ...).
using ParameterMap = std::map<std::string, double, std::less<>>;

/// Four distinct coordinate names.
class ChartSpec {
 public:
  /// Throws ContractViolation on duplicate or invalid identifiers.
  explicit ChartSpec(std::array<std::string, 4> names);

  std::array<std::string, 4> const& names() const noexcept { return names_; }
  std::string const& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  /// Coordinate index of `name`, or -1.
  int index_of(std::string_view name) const noexcept;

 private:
  std::array<std::string, 4> names_;
};

bool is_identifier(std::string_view s) noexcept;

//---------------------------------------------------------------------------//
// Construction helpers (with light constant folding used by differentiate)
//---------------------------------------------------------------------------//

namespace expr {
ExprPtr constant(double v);
ExprPtr coordinate(int index);
ExprPtr parameter(std::string name, double value);
ExprPtr neg(ExprPtr a);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr pow(ExprPtr a, ExprPtr b);
ExprPtr call(Function f, ExprPtr a);
}  // namespace expr

/// Parse `src` against a chart and parameter set.
/// Throws ParseError (byte offset + expected tokens), including for unknown
/// identifiers and function arity mismatches.
ExprPtr parse(std::string_view src, ChartSpec const& chart,
              ParameterMap const& params = {});

/// Fully parenthesized text that parses back to an equal tree.
std::string print(Expr const& e, ChartSpec const& chart);

/// Structural equality (constants compared exactly).
bool equal(Expr const& a, Expr const& b);

/// True when the tree contains no coordinate node.
bool is_constant(Expr const& e);

/// Symbolic partial derivative with respect to coordinate `axis`.
ExprPtr differentiate(ExprPtr const& e, int axis);

std::string_view function_name(Function f) noexcept;
std::optional<Function> function_from_name(std::string_view name) noexcept;

}  // namespace rcgeom
