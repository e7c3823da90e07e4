// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rcgeom/expr.hpp"

#include <cctype>
#include <cmath>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "rcgeom/error.hpp"

namespace rcgeom {

ParseError::ParseError(std::string message, std::size_t offset,
                       std::vector<std::string> expected)
    : Error(fmt::format("{} at byte {}", message, offset)),
      offset_(offset),
      expected_(std::move(expected)) {}

LoadError::LoadError(std::string message, std::size_t line)
    : Error(line ? fmt::format("line {}: {}", line, message) : message),
      line_(line) {}

bool is_identifier(std::string_view s) noexcept {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s[0]);
  if (!(std::isalpha(head) || s[0] == '_')) return false;
  for (char ch : s) {
    auto c = static_cast<unsigned char>(ch);
    if (!(std::isalnum(c) || ch == '_')) return false;
  }
  return true;
}

ChartSpec::ChartSpec(std::array<std::string, 4> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (auto const& n : names_) {
    if (!is_identifier(n)) {
      throw ContractViolation("invalid coordinate name '" + n + "'");
    }
    if (function_from_name(n)) {
      throw ContractViolation("coordinate name '" + n + "' shadows a function");
    }
    if (!seen.insert(n).second) {
      throw ContractViolation("duplicate coordinate name '" + n + "'");
    }
  }
}

int ChartSpec::index_of(std::string_view name) const noexcept {
  for (int i = 0; i < 4; ++i) {
    if (names_[static_cast<std::size_t>(i)] == name) return i;
  }
  return -1;
}

namespace {

constexpr std::array<std::pair<Function, std::string_view>, 9> kFunctions{{
    {Function::kSin, "sin"},
    {Function::kCos, "cos"},
    {Function::kTan, "tan"},
    {Function::kSinh, "sinh"},
    {Function::kCosh, "cosh"},
    {Function::kTanh, "tanh"},
    {Function::kExp, "exp"},
    {Function::kLog, "log"},
    {Function::kSqrt, "sqrt"},
}};

ExprPtr make_node(ExprKind kind, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->args = std::move(args);
  return e;
}

bool is_value(Expr const& e, double v) {
  return e.kind == ExprKind::kConstant && e.value == v;
}

}  // namespace

std::string_view function_name(Function f) noexcept {
  for (auto const& [fn, name] : kFunctions) {
    if (fn == f) return name;
  }
  return "?";
}

std::optional<Function> function_from_name(std::string_view name) noexcept {
  for (auto const& [fn, n] : kFunctions) {
    if (n == name) return fn;
  }
  return std::nullopt;
}

namespace expr {

ExprPtr constant(double v) {
  if (!std::isfinite(v)) throw ContractViolation("non-finite constant");
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::kConstant;
  e->value = v;
  return e;
}

ExprPtr coordinate(int index) {
  if (index < 0 || index > 3) throw ContractViolation("coordinate index out of range");
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::kCoordinate;
  e->coordinate = index;
  return e;
}

ExprPtr parameter(std::string name, double value) {
  if (!std::isfinite(value)) throw ContractViolation("non-finite parameter " + name);
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::kParameter;
  e->name = std::move(name);
  e->value = value;
  return e;
}

ExprPtr neg(ExprPtr a) {
  if (a->kind == ExprKind::kConstant) return constant(-a->value);
  return make_node(ExprKind::kNeg, {std::move(a)});
}

ExprPtr add(ExprPtr a, ExprPtr b) {
  if (is_value(*a, 0.0)) return b;
  if (is_value(*b, 0.0)) return a;
  if (a->kind == ExprKind::kConstant && b->kind == ExprKind::kConstant) {
    return constant(a->value + b->value);
  }
  return make_node(ExprKind::kAdd, {std::move(a), std::move(b)});
}

ExprPtr sub(ExprPtr a, ExprPtr b) {
  if (is_value(*b, 0.0)) return a;
  if (is_value(*a, 0.0)) return neg(std::move(b));
  if (a->kind == ExprKind::kConstant && b->kind == ExprKind::kConstant) {
    return constant(a->value - b->value);
  }
  return make_node(ExprKind::kSub, {std::move(a), std::move(b)});
}

ExprPtr mul(ExprPtr a, ExprPtr b) {
  if (is_value(*a, 0.0) || is_value(*b, 0.0)) return constant(0.0);
  if (is_value(*a, 1.0)) return b;
  if (is_value(*b, 1.0)) return a;
  if (a->kind == ExprKind::kConstant && b->kind == ExprKind::kConstant) {
    return constant(a->value * b->value);
  }
  return make_node(ExprKind::kMul, {std::move(a), std::move(b)});
}

ExprPtr div(ExprPtr a, ExprPtr b) {
  if (is_value(*b, 1.0)) return a;
  if (is_value(*a, 0.0) && !is_value(*b, 0.0)) return constant(0.0);
  return make_node(ExprKind::kDiv, {std::move(a), std::move(b)});
}

ExprPtr pow(ExprPtr a, ExprPtr b) {
  if (is_value(*b, 1.0)) return a;
  if (is_value(*b, 0.0)) return constant(1.0);
  return make_node(ExprKind::kPow, {std::move(a), std::move(b)});
}

ExprPtr call(Function f, ExprPtr a) {
  auto e = make_node(ExprKind::kCall, {std::move(a)});
  std::const_pointer_cast<Expr>(e)->function = f;
  return e;
}

}  // namespace expr

//---------------------------------------------------------------------------//
// Parser
//---------------------------------------------------------------------------//

namespace {

enum class Tok { kNumber, kIdent, kPlus, kMinus, kStar, kSlash, kCaret, kLParen, kRParen, kComma, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::size_t offset = 0;
  std::string_view text;
  double number = 0.0;
};

class Parser {
 public:
  Parser(std::string_view src, ChartSpec const& chart, ParameterMap const& params)
      : src_(src), chart_(chart), params_(params) {
    advance();
  }

  ExprPtr parse_all() {
    ExprPtr e = parse_expr();
    if (tok_.kind != Tok::kEnd) fail("unexpected token", {"+", "-", "*", "/", "^", "end of input"});
    return e;
  }

 private:
  [[noreturn]] void fail(std::string const& what, std::vector<std::string> expected) const {
    std::string msg = what;
    if (tok_.kind == Tok::kEnd) {
      msg += " (end of input)";
    } else {
      msg += " '" + std::string(tok_.text) + "'";
    }
    if (!expected.empty()) {
      msg += "; expected one of:";
      for (auto const& e : expected) msg += " " + e;
    }
    throw ParseError(msg, tok_.offset, std::move(expected));
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::kEnd;
      return;
    }
    char ch = src_[pos_];
    auto single = [&](Tok k) {
      tok_.kind = k;
      tok_.text = src_.substr(pos_, 1);
      ++pos_;
    };
    switch (ch) {
      case '+': return single(Tok::kPlus);
      case '-': return single(Tok::kMinus);
      case '*': return single(Tok::kStar);
      case '/': return single(Tok::kSlash);
      case '^': return single(Tok::kCaret);
      case '(': return single(Tok::kLParen);
      case ')': return single(Tok::kRParen);
      case ',': return single(Tok::kComma);
      default: break;
    }
    auto uc = static_cast<unsigned char>(ch);
    if (std::isdigit(uc) || ch == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(uc) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      tok_.kind = Tok::kIdent;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    tok_.text = src_.substr(pos_, 1);
    throw ParseError("unexpected character '" + std::string(tok_.text) + "'", pos_,
                     {"number", "identifier", "(", "-"});
  }

  void lex_number() {
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) {
      throw ParseError("malformed number", start, {"digit"});
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        throw ParseError("malformed exponent", save, {"digit"});
      }
    }
    tok_.kind = Tok::kNumber;
    tok_.text = src_.substr(start, pos_ - start);
    // from_chars rejects a leading '.', so go through std::string/strtod.
    std::string buf(tok_.text);
    char* end = nullptr;
    tok_.number = std::strtod(buf.c_str(), &end);
    if (!std::isfinite(tok_.number)) {
      throw ParseError("number out of range", start, {});
    }
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    while (tok_.kind == Tok::kPlus || tok_.kind == Tok::kMinus) {
      ExprKind k = tok_.kind == Tok::kPlus ? ExprKind::kAdd : ExprKind::kSub;
      advance();
      ExprPtr rhs = parse_term();
      lhs = make_node(k, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    while (tok_.kind == Tok::kStar || tok_.kind == Tok::kSlash) {
      ExprKind k = tok_.kind == Tok::kStar ? ExprKind::kMul : ExprKind::kDiv;
      advance();
      ExprPtr rhs = parse_factor();
      lhs = make_node(k, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr parse_factor() {
    if (tok_.kind == Tok::kMinus) {
      advance();
      return make_node(ExprKind::kNeg, {parse_factor()});
    }
    ExprPtr base = parse_base();
    if (tok_.kind == Tok::kCaret) {
      advance();
      return make_node(ExprKind::kPow, {base, parse_factor()});
    }
    return base;
  }

  ExprPtr parse_base() {
    switch (tok_.kind) {
      case Tok::kNumber: {
        ExprPtr e = expr::constant(tok_.number);
        advance();
        return e;
      }
      case Tok::kLParen: {
        advance();
        ExprPtr e = parse_expr();
        if (tok_.kind != Tok::kRParen) fail("unbalanced parenthesis", {")"});
        advance();
        return e;
      }
      case Tok::kIdent:
        return parse_identifier();
      default:
        fail("unexpected token", {"number", "identifier", "(", "-"});
    }
  }

  ExprPtr parse_identifier() {
    Token id = tok_;
    advance();
    if (tok_.kind == Tok::kLParen) {
      auto fn = function_from_name(id.text);
      if (!fn) {
        throw ParseError("unknown function '" + std::string(id.text) + "'", id.offset,
                         {"sin", "cos", "tan", "sinh", "cosh", "tanh", "exp", "log", "sqrt"});
      }
      std::size_t open = tok_.offset;
      advance();
      if (tok_.kind == Tok::kRParen) {
        throw ParseError("function '" + std::string(id.text) + "' takes 1 argument, got 0",
                         open, {"expression"});
      }
      std::vector<ExprPtr> args{parse_expr()};
      while (tok_.kind == Tok::kComma) {
        advance();
        args.push_back(parse_expr());
      }
      if (tok_.kind != Tok::kRParen) fail("unterminated argument list", {")", ","});
      if (args.size() != 1) {
        throw ParseError(fmt::format("function '{}' takes 1 argument, got {}", id.text,
                                     args.size()),
                         id.offset, {")"});
      }
      advance();
      return expr::call(*fn, args.front());
    }
    if (function_from_name(id.text)) {
      throw ParseError("function '" + std::string(id.text) + "' requires an argument list",
                       tok_.offset, {"("});
    }
    if (int c = chart_.index_of(id.text); c >= 0) return expr::coordinate(c);
    if (auto it = params_.find(id.text); it != params_.end()) {
      return expr::parameter(std::string(id.text), it->second);
    }
    throw ParseError("unknown identifier '" + std::string(id.text) + "'", id.offset,
                     {"coordinate", "parameter"});
  }

  std::string_view src_;
  ChartSpec const& chart_;
  ParameterMap const& params_;
  std::size_t pos_ = 0;
  Token tok_;
};

}  // namespace

ExprPtr parse(std::string_view src, ChartSpec const& chart, ParameterMap const& params) {
  Parser p(src, chart, params);
  return p.parse_all();
}

//---------------------------------------------------------------------------//
// Printing, equality, differentiation
//---------------------------------------------------------------------------//

std::string print(Expr const& e, ChartSpec const& chart) {
  auto const& a = e.args;
  switch (e.kind) {
    case ExprKind::kConstant:
      return e.value < 0 ? fmt::format("(-{:.17g})", -e.value) : fmt::format("{:.17g}", e.value);
    case ExprKind::kCoordinate:
      return chart.name(e.coordinate);
    case ExprKind::kParameter:
      return e.name;
    case ExprKind::kNeg:
      return "(-" + print(*a[0], chart) + ")";
    case ExprKind::kAdd:
      return "(" + print(*a[0], chart) + " + " + print(*a[1], chart) + ")";
    case ExprKind::kSub:
      return "(" + print(*a[0], chart) + " - " + print(*a[1], chart) + ")";
    case ExprKind::kMul:
      return "(" + print(*a[0], chart) + " * " + print(*a[1], chart) + ")";
    case ExprKind::kDiv:
      return "(" + print(*a[0], chart) + " / " + print(*a[1], chart) + ")";
    case ExprKind::kPow:
      return "(" + print(*a[0], chart) + " ^ " + print(*a[1], chart) + ")";
    case ExprKind::kCall:
      return std::string(function_name(e.function)) + "(" + print(*a[0], chart) + ")";
  }
  return {};
}

bool equal(Expr const& a, Expr const& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case ExprKind::kConstant:
      if (a.value != b.value) return false;
      break;
    case ExprKind::kCoordinate:
      if (a.coordinate != b.coordinate) return false;
      break;
    case ExprKind::kParameter:
      if (a.name != b.name || a.value != b.value) return false;
      break;
    case ExprKind::kCall:
      if (a.function != b.function) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

bool is_constant(Expr const& e) {
  if (e.kind == ExprKind::kCoordinate) return false;
  for (auto const& c : e.args) {
    if (!is_constant(*c)) return false;
  }
  return true;
}

ExprPtr differentiate(ExprPtr const& e, int axis) {
  using namespace expr;
  if (is_constant(*e)) return constant(0.0);
  auto const& a = e->args;
  switch (e->kind) {
    case ExprKind::kConstant:
    case ExprKind::kParameter:
      return constant(0.0);
    case ExprKind::kCoordinate:
      return constant(e->coordinate == axis ? 1.0 : 0.0);
    case ExprKind::kNeg:
      return neg(differentiate(a[0], axis));
    case ExprKind::kAdd:
      return add(differentiate(a[0], axis), differentiate(a[1], axis));
    case ExprKind::kSub:
      return sub(differentiate(a[0], axis), differentiate(a[1], axis));
    case ExprKind::kMul:
      return add(mul(differentiate(a[0], axis), a[1]), mul(a[0], differentiate(a[1], axis)));
    case ExprKind::kDiv: {
      // (u/v)' = u'/v - u v'/v^2
      ExprPtr du = differentiate(a[0], axis);
      ExprPtr dv = differentiate(a[1], axis);
      return sub(div(du, a[1]), div(mul(a[0], dv), mul(a[1], a[1])));
    }
    case ExprKind::kPow: {
      ExprPtr const& u = a[0];
      ExprPtr const& p = a[1];
      ExprPtr du = differentiate(u, axis);
      if (is_constant(*p)) {
        // p u^(p-1) u'
        return mul(mul(p, pow(u, sub(p, constant(1.0)))), du);
      }
      // u^p (p' log u + p u'/u)
      ExprPtr dp = differentiate(p, axis);
      return mul(e, add(mul(dp, call(Function::kLog, u)), div(mul(p, du), u)));
    }
    case ExprKind::kCall: {
      ExprPtr const& u = a[0];
      ExprPtr du = differentiate(u, axis);
      ExprPtr outer;
      switch (e->function) {
        case Function::kSin: outer = call(Function::kCos, u); break;
        case Function::kCos: outer = neg(call(Function::kSin, u)); break;
        case Function::kTan:
          outer = div(constant(1.0), pow(call(Function::kCos, u), constant(2.0)));
          break;
        case Function::kSinh: outer = call(Function::kCosh, u); break;
        case Function::kCosh: outer = call(Function::kSinh, u); break;
        case Function::kTanh:
          outer = sub(constant(1.0), pow(e, constant(2.0)));
          break;
        case Function::kExp: outer = e; break;
        case Function::kLog: outer = div(constant(1.0), u); break;
        case Function::kSqrt: outer = div(constant(0.5), e); break;
      }
      return mul(outer, du);
    }
  }
  return constant(0.0);
}

}  // namespace rcgeom
