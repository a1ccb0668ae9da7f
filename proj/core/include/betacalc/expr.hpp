#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace betacalc {

enum class Func { abs, sgn, exp, log, sin, cos, sqrt, min, max };

std::string_view to_string(Func fn) noexcept;

/// Immutable expression tree for a real function of one variable `x`.
///
/// Copies share the underlying nodes, so passing an Expr by value is cheap.
/// Evaluation follows IEEE double semantics: NaN and infinities propagate and
/// nothing throws. `sgn(0)` is 0.
class Expr {
 public:
  enum class Kind { number, variable, negate, add, sub, mul, div, pow, call };

  /// The constant 0.
  Expr();

  static Expr number(double value);
  static Expr variable();
  static Expr negate(Expr operand);
  static Expr binary(Kind op, Expr lhs, Expr rhs);
  static Expr power(Expr base, int exponent);
  static Expr call(Func fn, std::vector<Expr> args);

  double operator()(double x) const noexcept;

  Kind kind() const noexcept;
  double value() const noexcept;
  int exponent() const noexcept;
  Func func() const noexcept;
  const std::vector<Expr>& children() const noexcept;

  /// Structural equality. Literals compare bitwise.
  friend bool operator==(const Expr& lhs, const Expr& rhs) noexcept;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline Expr operator+(Expr l, Expr r) { return Expr::binary(Expr::Kind::add, std::move(l), std::move(r)); }
inline Expr operator-(Expr l, Expr r) { return Expr::binary(Expr::Kind::sub, std::move(l), std::move(r)); }
inline Expr operator*(Expr l, Expr r) { return Expr::binary(Expr::Kind::mul, std::move(l), std::move(r)); }
inline Expr operator/(Expr l, Expr r) { return Expr::binary(Expr::Kind::div, std::move(l), std::move(r)); }

// Grammar:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := "-" factor | atom ("^" integer)?
//   atom   := number | "x" | ident "(" expr ("," expr)* ")" | "(" expr ")"
//   ident  := abs | sgn | exp | log | sin | cos | sqrt | min | max
//
// Throws ParseError (syntax_error or unknown_identifier) with the byte offset
// of the offending token.
Expr parse(std::string_view text);

inline double eval(const Expr& e, double x) noexcept { return e(x); }

/// Fully parenthesised text form; parse(to_string(e)) == e for parsed trees.
std::string to_string(const Expr& e);

}  // namespace betacalc
