// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rcgeom/field.hpp"

#include <cmath>
#include <string>

#include "rcgeom/error.hpp"

namespace rcgeom {

namespace detail {

enum class Op { kConst, kCoord, kNeg, kAdd, kSub, kMul, kDiv, kPowInt, kPowReal, kPowGeneral, kCall };

struct Instr {
  Op op = Op::kConst;
  int index = 0;       // coordinate, or integer exponent
  double value = 0.0;  // constant, or real exponent
  Function function = Function::kSin;
};

struct Program {
  std::vector<Instr> code;
  int max_depth = 0;
};

}  // namespace detail

namespace {

using detail::Instr;
using detail::Op;
using detail::Program;

inline bool all_finite(double x) { return std::isfinite(x); }
template <class S>
bool all_finite(Jet1<S> const& x) {
  if (!all_finite(x.v)) return false;
  for (auto const& d : x.d) {
    if (!all_finite(d)) return false;
  }
  return true;
}
template <class S>
bool all_finite(Jet2<S> const& x) {
  if (!all_finite(x.v)) return false;
  for (auto const& d : x.d) {
    if (!all_finite(d)) return false;
  }
  for (auto const& h : x.h) {
    if (!all_finite(h)) return false;
  }
  return true;
}

template <class N>
N apply_function(Function f, N const& u) {
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  using std::tan;
  using std::tanh;
  switch (f) {
    case Function::kSin: return sin(u);
    case Function::kCos: return cos(u);
    case Function::kTan: return tan(u);
    case Function::kSinh: return sinh(u);
    case Function::kCosh: return cosh(u);
    case Function::kTanh: return tanh(u);
    case Function::kExp: return exp(u);
    case Function::kLog:
      if (!(scalar_value(u) > 0.0)) {
        throw DomainError("log of non-positive argument " + std::to_string(scalar_value(u)));
      }
      return log(u);
    case Function::kSqrt:
      if (!(scalar_value(u) > 0.0)) {
        throw DomainError("sqrt of non-positive argument " + std::to_string(scalar_value(u)));
      }
      return sqrt(u);
  }
  return u;
}

template <class N>
N divide(N const& a, N const& b) {
  if (scalar_value(b) == 0.0) throw DomainError("division by zero");
  return a / b;
}

template <class N>
N int_power(N base, int n) {
  bool invert = n < 0;
  unsigned e = static_cast<unsigned>(invert ? -n : n);
  N result(1.0);
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return invert ? divide(N(1.0), result) : result;
}

int compile_into(Expr const& e, Program& p, int depth, bool fold = true);

// Fold a coordinate-free subtree to a constant when it evaluates cleanly.
bool try_fold(Expr const& e, Program& p) {
  if (!is_constant(e) || e.kind == ExprKind::kConstant) return false;
  Program sub;
  compile_into(e, sub, 0, false);
  std::vector<double> stack;
  try {
    for (auto const& in : sub.code) {
      switch (in.op) {
        case Op::kConst: stack.push_back(in.value); break;
        case Op::kCoord: return false;
        case Op::kNeg: stack.back() = -stack.back(); break;
        default: {
          if (in.op == Op::kCall) {
            stack.back() = apply_function(in.function, stack.back());
            break;
          }
          if (in.op == Op::kPowInt) {
            stack.back() = int_power(stack.back(), in.index);
            break;
          }
          if (in.op == Op::kPowReal) {
            if (!(stack.back() > 0.0)) return false;
            stack.back() = std::pow(stack.back(), in.value);
            break;
          }
          double b = stack.back();
          stack.pop_back();
          double& a = stack.back();
          switch (in.op) {
            case Op::kAdd: a = a + b; break;
            case Op::kSub: a = a - b; break;
            case Op::kMul: a = a * b; break;
            case Op::kDiv: a = divide(a, b); break;
            case Op::kPowGeneral:
              if (!(a > 0.0)) return false;
              a = std::pow(a, b);
              break;
            default: return false;
          }
        }
      }
    }
  } catch (DomainError const&) {
    return false;
  }
  if (stack.size() != 1 || !std::isfinite(stack.back())) return false;
  p.code.push_back({Op::kConst, 0, stack.back(), Function::kSin});
  return true;
}

int compile_into(Expr const& e, Program& p, int depth, bool fold) {
  auto bump = [&](int d) { p.max_depth = std::max(p.max_depth, d); };
  if (fold && try_fold(e, p)) {
    bump(depth + 1);
    return depth + 1;
  }
  auto const& a = e.args;
  switch (e.kind) {
    case ExprKind::kConstant:
    case ExprKind::kParameter:
      p.code.push_back({Op::kConst, 0, e.value, Function::kSin});
      bump(depth + 1);
      return depth + 1;
    case ExprKind::kCoordinate:
      p.code.push_back({Op::kCoord, e.coordinate, 0.0, Function::kSin});
      bump(depth + 1);
      return depth + 1;
    case ExprKind::kNeg:
      compile_into(*a[0], p, depth, fold);
      p.code.push_back({Op::kNeg, 0, 0.0, Function::kSin});
      return depth + 1;
    case ExprKind::kCall:
      compile_into(*a[0], p, depth, fold);
      p.code.push_back({Op::kCall, 0, 0.0, e.function});
      return depth + 1;
    case ExprKind::kPow:
      if (is_constant(*a[1])) {
        Program ex;
        compile_into(*a[1], ex, 0);
        if (ex.code.size() == 1 && ex.code[0].op == Op::kConst) {
          double v = ex.code[0].value;
          compile_into(*a[0], p, depth, fold);
          if (v == std::round(v) && std::abs(v) <= 64.0) {
            p.code.push_back({Op::kPowInt, static_cast<int>(v), 0.0, Function::kSin});
          } else {
            p.code.push_back({Op::kPowReal, 0, v, Function::kSin});
          }
          return depth + 1;
        }
      }
      [[fallthrough]];
    default: {
      compile_into(*a[0], p, depth, fold);
      compile_into(*a[1], p, depth + 1, fold);
      Op op = Op::kAdd;
      switch (e.kind) {
        case ExprKind::kAdd: op = Op::kAdd; break;
        case ExprKind::kSub: op = Op::kSub; break;
        case ExprKind::kMul: op = Op::kMul; break;
        case ExprKind::kDiv: op = Op::kDiv; break;
        case ExprKind::kPow: op = Op::kPowGeneral; break;
        default: break;
      }
      p.code.push_back({op, 0, 0.0, Function::kSin});
      return depth + 1;
    }
  }
}

std::shared_ptr<Program const> compile(Expr const& e) {
  auto p = std::make_shared<Program>();
  compile_into(e, *p, 0);
  return p;
}

}  // namespace

ScalarField::ScalarField() : ScalarField(expr::constant(0.0)) {}

ScalarField::ScalarField(ExprPtr expr) : expr_(std::move(expr)) {
  if (!expr_) throw ContractViolation("null expression");
  program_ = compile(*expr_);
}

bool ScalarField::is_zero() const noexcept {
  return expr_->kind == ExprKind::kConstant && expr_->value == 0.0;
}

template <class N>
N ScalarField::eval(std::array<N, 4> const& x) const {
  constexpr int kInline = 12;
  std::array<N, kInline> inline_stack{};
  std::vector<N> heap_stack;
  N* stack = inline_stack.data();
  if (program_->max_depth > kInline) {
    heap_stack.resize(static_cast<std::size_t>(program_->max_depth));
    stack = heap_stack.data();
  }
  int sp = 0;
  for (Instr const& in : program_->code) {
    switch (in.op) {
      case Op::kConst: stack[sp++] = N(in.value); break;
      case Op::kCoord: stack[sp++] = x[static_cast<std::size_t>(in.index)]; break;
      case Op::kNeg: stack[sp - 1] = -stack[sp - 1]; break;
      case Op::kCall: stack[sp - 1] = apply_function(in.function, stack[sp - 1]); break;
      case Op::kPowInt: stack[sp - 1] = int_power(stack[sp - 1], in.index); break;
      case Op::kPowReal:
        if (!(scalar_value(stack[sp - 1]) > 0.0)) {
          throw DomainError("non-integer power of non-positive base");
        }
        stack[sp - 1] = pow_const(stack[sp - 1], in.value);
        break;
      case Op::kAdd: --sp; stack[sp - 1] = stack[sp - 1] + stack[sp]; break;
      case Op::kSub: --sp; stack[sp - 1] = stack[sp - 1] - stack[sp]; break;
      case Op::kMul: --sp; stack[sp - 1] = stack[sp - 1] * stack[sp]; break;
      case Op::kDiv: --sp; stack[sp - 1] = divide(stack[sp - 1], stack[sp]); break;
      case Op::kPowGeneral: {
        using std::exp;
        using std::log;
        --sp;
        if (!(scalar_value(stack[sp - 1]) > 0.0)) {
          throw DomainError("variable power of non-positive base");
        }
        stack[sp - 1] = exp(stack[sp] * log(stack[sp - 1]));
        break;
      }
    }
  }
  N const& result = stack[0];
  if (!all_finite(result)) throw DomainError("non-finite field value");
  return result;
}

template double ScalarField::eval(std::array<double, 4> const&) const;
template Jet1<double> ScalarField::eval(std::array<Jet1<double>, 4> const&) const;
template Jet2<double> ScalarField::eval(std::array<Jet2<double>, 4> const&) const;
template Jet2<Jet1<double>> ScalarField::eval(std::array<Jet2<Jet1<double>>, 4> const&) const;

bool DomainPredicate::contains(Point const& x) const noexcept {
  if (!field_) return true;
  try {
    return field_->eval<double>(x) > 0.0;
  } catch (Error const&) {
    return false;
  }
}

FieldDerivatives eval_with_derivatives(ScalarField const& f, Point const& x,
                                       DomainPredicate const& domain) {
  if (!domain.contains(x)) throw DomainError("point outside the chart domain");
  std::array<Jet2<double>, 4> seeded;
  for (int i = 0; i < 4; ++i) seeded[i] = Jet2<double>::variable(x[i], i);
  Jet2<double> r = f.eval(seeded);
  FieldDerivatives out;
  out.value = r.v;
  for (int i = 0; i < 4; ++i) {
    out.gradient[i] = r.d[i];
    for (int j = 0; j < 4; ++j) out.hessian[i][j] = r.hess(i, j);
  }
  return out;
}

std::array<double, 4> default_fd_step(Point const& x) {
  std::array<double, 4> h{};
  for (int i = 0; i < 4; ++i) h[i] = 1e-4 * std::max(1.0, std::abs(x[i]));
  return h;
}

FieldDerivatives finite_difference_derivatives(ScalarField const& f, Point const& x,
                                               std::optional<std::array<double, 4>> step,
                                               DomainPredicate const& domain) {
  std::array<double, 4> h = step ? *step : default_fd_step(x);
  auto at = [&](int i, double si, int j, double sj) {
    Point y = x;
    if (i >= 0) y[i] += si * h[i];
    if (j >= 0) y[j] += sj * h[j];
    if (!domain.contains(y)) throw DomainError("finite-difference stencil leaves the domain");
    return f(y);
  };
  FieldDerivatives out;
  out.value = at(-1, 0, -1, 0);
  for (int i = 0; i < 4; ++i) {
    double fp = at(i, 1, -1, 0);
    double fm = at(i, -1, -1, 0);
    out.gradient[i] = (fp - fm) / (2.0 * h[i]);
    out.hessian[i][i] = (fp - 2.0 * out.value + fm) / (h[i] * h[i]);
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      double v = (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) /
                 (4.0 * h[i] * h[j]);
      out.hessian[i][j] = v;
      out.hessian[j][i] = v;
    }
  }
  return out;
}

}  // namespace rcgeom
