#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "analytica/error.hpp"
#include "analytica/interval.hpp"
#include "analytica/rational.hpp"

namespace analytica {

/// Immutable expression tree for test functions f(x_1, ..., x_n).
/// Pow with a non-integer exponent is guarded by base >= 0. CuspRoot(x, y)
/// is the function y^(1/3) on {x^3 = y^2}, evaluated along plots as y/x.
class Expression {
public:
  enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Exp, Pow, CuspRoot };

  static Expression constant(Rational c) { return Expression(Op::Const, {}, std::move(c), 0); }
  static Expression variable(std::size_t i) { return Expression(Op::Var, {}, Rational(0), i); }

  friend Expression operator+(const Expression& a, const Expression& b) { return {Op::Add, {a, b}, Rational(0), 0}; }
  friend Expression operator-(const Expression& a, const Expression& b) { return {Op::Sub, {a, b}, Rational(0), 0}; }
  friend Expression operator*(const Expression& a, const Expression& b) { return {Op::Mul, {a, b}, Rational(0), 0}; }
  friend Expression operator/(const Expression& a, const Expression& b) { return {Op::Div, {a, b}, Rational(0), 0}; }
  friend Expression operator-(const Expression& a) { return {Op::Neg, {a}, Rational(0), 0}; }
  friend Expression exp(const Expression& a) { return {Op::Exp, {a}, Rational(0), 0}; }
  friend Expression pow(const Expression& a, Rational e) { return {Op::Pow, {a}, std::move(e), 0}; }
  friend Expression cusp_root(const Expression& x, const Expression& y) { return {Op::CuspRoot, {x, y}, Rational(0), 0}; }

  Op op() const { return node_->op; }
  /// Constant value, or the exponent of a Pow node.
  const Rational& value() const { return node_->value; }
  std::size_t index() const { return node_->index; }
  const std::vector<Expression>& args() const { return node_->args; }
  const Expression& arg(std::size_t i) const { return node_->args.at(i); }

  /// Number of variables referenced (max index + 1).
  std::size_t arity() const {
    if (op() == Op::Var) return index() + 1;
    std::size_t a = 0;
    for (const auto& c : args()) a = std::max(a, c.arity());
    return a;
  }

  std::string to_string() const {
    const auto& a = args();
    switch (op()) {
      case Op::Const: return value().get_str();
      case Op::Var: return "x" + std::to_string(index() + 1);
      case Op::Add: return "(" + a[0].to_string() + " + " + a[1].to_string() + ")";
      case Op::Sub: return "(" + a[0].to_string() + " - " + a[1].to_string() + ")";
      case Op::Mul: return "(" + a[0].to_string() + " * " + a[1].to_string() + ")";
      case Op::Div: return "(" + a[0].to_string() + " / " + a[1].to_string() + ")";
      case Op::Neg: return "-" + a[0].to_string();
      case Op::Exp: return "exp(" + a[0].to_string() + ")";
      case Op::Pow: return a[0].to_string() + "^(" + value().get_str() + ")";
      case Op::CuspRoot: return "cusp_root(" + a[0].to_string() + ", " + a[1].to_string() + ")";
    }
    return "?";
  }

  /// Certified enclosure at an interval point. Guards are enforced: a
  /// fractional power of a possibly negative base throws DomainError.
  Interval evaluate(std::span<const Interval> x) const {
    const auto& a = args();
    const mpfr_prec_t prec = x.empty() ? default_precision() : x[0].precision();
    switch (op()) {
      case Op::Const: return Interval(value(), prec);
      case Op::Var:
        if (index() >= x.size()) throw DimensionError("expression variable out of range");
        return x[index()];
      case Op::Add: return a[0].evaluate(x) + a[1].evaluate(x);
      case Op::Sub: return a[0].evaluate(x) - a[1].evaluate(x);
      case Op::Mul: return a[0].evaluate(x) * a[1].evaluate(x);
      case Op::Div: return a[0].evaluate(x) / a[1].evaluate(x);
      case Op::Neg: return -a[0].evaluate(x);
      case Op::Exp: return exp(a[0].evaluate(x));
      case Op::Pow: {
        const Interval b = a[0].evaluate(x);
        if (!is_integer(value()) && !b.certainly_nonnegative()) throw DomainError("pow guard: base not certainly >= 0");
        return pow(b, value());
      }
      case Op::CuspRoot: return root(a[1].evaluate(x), 3);
    }
    throw Error("bad expression node");
  }

  Interval evaluate(std::span<const Rational> x, mpfr_prec_t prec = default_precision()) const {
    std::vector<Interval> iv;
    iv.reserve(x.size());
    for (const auto& v : x) iv.emplace_back(v, prec);
    return evaluate(std::span<const Interval>(iv));
  }

private:
  struct Node {
    Op op;
    std::vector<Expression> args;
    Rational value;
    std::size_t index;
  };

  Expression(Op op, std::vector<Expression> args, Rational value, std::size_t index)
      : node_(std::make_shared<const Node>(Node{op, std::move(args), std::move(value), index})) {}

  std::shared_ptr<const Node> node_;
};

namespace functions {

/// e^(-1/(x^2 + y^2)), flat at the origin.
inline Expression flat_bump() {
  const auto x = Expression::variable(0), y = Expression::variable(1);
  return exp(-(Expression::constant(1) / (x * x + y * y)));
}

/// y^(1/3) on the cusp curve x^3 = y^2.
inline Expression cusp_cube_root() { return cusp_root(Expression::variable(0), Expression::variable(1)); }

/// 1/(1 - x).
inline Expression geometric() { return Expression::constant(1) / (Expression::constant(1) - Expression::variable(0)); }

} // namespace functions

} // namespace analytica
