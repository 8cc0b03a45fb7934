#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "plurigeo/types.hpp"

namespace plurigeo {

// Rational complex expressions in coordinates z1..zn and their conjugates.
//
// Grammar (whitespace insignificant between tokens):
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := "-" factor | base ("^" integer)?
//   base   := number | "i" | coord | "conj" "(" expr ")" | "abs2" "(" expr ")" | "(" expr ")"
//   coord  := "z" positive-integer
//
// Precedence: ^ over unary - over *,/ over +,-.  Binary operators of equal
// precedence associate left.  Integer exponents are bounded by |e| <= 16.
// Conjugates are written conj(zk); there is no distinct conjugate token.

enum class NodeKind { Constant, Coord, Neg, Conj, Abs2, Add, Sub, Mul, Div, Pow };

struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind = NodeKind::Constant;
  Complex value{};    // Constant
  int coord = 0;      // Coord, 1-based
  int exponent = 0;   // Pow
  NodePtr lhs, rhs;   // children; only lhs for unary nodes
  int max_coord = 0;  // largest coordinate index referenced in this subtree
};

inline constexpr int kMaxExponent = 16;

class Expr {
 public:
  Expr() = default;
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  static Expr constant(Complex c);
  static Expr number(double x) { return constant(Complex(x, 0.0)); }
  static Expr imaginary() { return constant(Complex(0.0, 1.0)); }
  static Expr coord(int k);  // 1-based

  explicit operator bool() const { return static_cast<bool>(root_); }
  const ExprNode* root() const { return root_.get(); }
  NodePtr root_ptr() const { return root_; }
  int max_coord() const { return root_ ? root_->max_coord : 0; }

  // Fully parenthesized form; reparsing it reproduces the tree for any tree
  // whose constants are nonnegative reals or the literal i (in particular for
  // every parser-produced tree).
  std::string to_string() const;

  bool same_tree(const Expr& other) const;

  // Replaces coordinate k by components[k-1]; conjugation nodes apply to the
  // substituted subtrees, so the result evaluates to this(components(w)).
  Expr substitute(std::span<const Expr> components) const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

 private:
  NodePtr root_;
};

Expr conj(const Expr& e);
Expr abs2(const Expr& e);
Expr pow(const Expr& e, int exponent);

// Parses `text` for a chart of dimension n.  Throws ParseError with the byte
// offset of the offending token; out-of-range coordinate indices and exponent
// bounds are rejected here, division by zero only surfaces at evaluation.
Expr parse_expr(std::string_view text, int n);

}  // namespace plurigeo
