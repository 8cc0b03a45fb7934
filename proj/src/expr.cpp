#include "plurigeo/expr.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <unordered_map>
#include <utility>
#include <vector>

#include "plurigeo/errors.hpp"

namespace plurigeo {

namespace {

NodePtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

NodePtr unary(NodeKind kind, NodePtr child) {
  ExprNode n;
  n.kind = kind;
  n.max_coord = child->max_coord;
  n.lhs = std::move(child);
  return make_node(std::move(n));
}

NodePtr binary(NodeKind kind, NodePtr a, NodePtr b) {
  ExprNode n;
  n.kind = kind;
  n.max_coord = std::max(a->max_coord, b->max_coord);
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return make_node(std::move(n));
}

NodePtr power(NodePtr base, int exponent) {
  if (exponent > kMaxExponent || exponent < -kMaxExponent)
    throw Error("integer exponent out of bounds: " + std::to_string(exponent));
  ExprNode n;
  n.kind = NodeKind::Pow;
  n.exponent = exponent;
  n.max_coord = base->max_coord;
  n.lhs = std::move(base);
  return make_node(std::move(n));
}

}  // namespace

Expr Expr::constant(Complex c) {
  ExprNode n;
  n.kind = NodeKind::Constant;
  n.value = c;
  return Expr(make_node(std::move(n)));
}

Expr Expr::coord(int k) {
  if (k < 1) throw Error("coordinate index must be positive");
  ExprNode n;
  n.kind = NodeKind::Coord;
  n.coord = k;
  n.max_coord = k;
  return Expr(make_node(std::move(n)));
}

Expr operator+(const Expr& a, const Expr& b) { return Expr(binary(NodeKind::Add, a.root_ptr(), b.root_ptr())); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(binary(NodeKind::Sub, a.root_ptr(), b.root_ptr())); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(binary(NodeKind::Mul, a.root_ptr(), b.root_ptr())); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(binary(NodeKind::Div, a.root_ptr(), b.root_ptr())); }
Expr operator-(const Expr& a) { return Expr(unary(NodeKind::Neg, a.root_ptr())); }

Expr conj(const Expr& e) { return Expr(unary(NodeKind::Conj, e.root_ptr())); }
Expr abs2(const Expr& e) { return Expr(unary(NodeKind::Abs2, e.root_ptr())); }
Expr pow(const Expr& e, int exponent) { return Expr(power(e.root_ptr(), exponent)); }

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

struct Token {
  enum Kind { Number, Imag, Coord, Conj, Abs2, LParen, RParen, Plus, Minus, Star, Slash, Caret, End };
  Kind kind = End;
  double num = 0.0;
  bool integral = false;   // number written without fraction or exponent
  long long int_value = 0; // value when integral
  int coord = 0;
  std::size_t offset = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto peek = [&](std::size_t k) -> char { return k < n ? text[k] : '\0'; };
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.offset = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (std::isdigit(static_cast<unsigned char>(peek(i)))) ++i;
      bool integral = true;
      if (peek(i) == '.') {
        integral = false;
        ++i;
        while (std::isdigit(static_cast<unsigned char>(peek(i)))) ++i;
      }
      if (peek(i) == 'e' || peek(i) == 'E') {
        std::size_t mark = i;
        ++i;
        if (peek(i) == '+' || peek(i) == '-') ++i;
        if (!std::isdigit(static_cast<unsigned char>(peek(i)))) throw ParseError("malformed number", mark);
        integral = false;
        while (std::isdigit(static_cast<unsigned char>(peek(i)))) ++i;
      }
      std::string_view slice = text.substr(start, i - start);
      double value = 0.0;
      auto res = std::from_chars(slice.data(), slice.data() + slice.size(), value);
      if (res.ec != std::errc{}) throw ParseError("malformed number", start);
      t.kind = Token::Number;
      t.num = value;
      t.integral = integral;
      if (integral) {
        long long iv = 0;
        auto ires = std::from_chars(slice.data(), slice.data() + slice.size(), iv);
        // Values too large for long long are far outside the exponent bound.
        t.int_value = (ires.ec == std::errc{}) ? iv : (kMaxExponent + 1);
      }
      out.push_back(t);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (std::isalnum(static_cast<unsigned char>(peek(i)))) ++i;
      std::string_view word = text.substr(start, i - start);
      if (word == "i") {
        t.kind = Token::Imag;
      } else if (word == "conj") {
        t.kind = Token::Conj;
      } else if (word == "abs2") {
        t.kind = Token::Abs2;
      } else if (word.size() > 1 && word[0] == 'z') {
        int k = 0;
        auto res = std::from_chars(word.data() + 1, word.data() + word.size(), k);
        if (res.ec != std::errc{} || res.ptr != word.data() + word.size())
          throw ParseError("unknown identifier '" + std::string(word) + "'", start);
        t.kind = Token::Coord;
        t.coord = k;
      } else {
        throw ParseError("unknown identifier '" + std::string(word) + "'", start);
      }
      out.push_back(t);
      continue;
    }
    switch (c) {
      case '(': t.kind = Token::LParen; break;
      case ')': t.kind = Token::RParen; break;
      case '+': t.kind = Token::Plus; break;
      case '-': t.kind = Token::Minus; break;
      case '*': t.kind = Token::Star; break;
      case '/': t.kind = Token::Slash; break;
      case '^': t.kind = Token::Caret; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    ++i;
    out.push_back(t);
  }
  Token end;
  end.kind = Token::End;
  end.offset = n;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, int dim) : tokens_(std::move(tokens)), dim_(dim) {}

  NodePtr run() {
    NodePtr e = expr();
    if (cur().kind != Token::End) throw ParseError("unexpected trailing input", cur().offset);
    return e;
  }

 private:
  const Token& cur() const { return tokens_[pos_]; }
  void advance() { ++pos_; }
  bool accept(Token::Kind k) {
    if (cur().kind == k) {
      advance();
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr e = term();
    for (;;) {
      if (accept(Token::Plus)) {
        e = binary(NodeKind::Add, e, term());
      } else if (accept(Token::Minus)) {
        e = binary(NodeKind::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  NodePtr term() {
    NodePtr e = factor();
    for (;;) {
      if (accept(Token::Star)) {
        e = binary(NodeKind::Mul, e, factor());
      } else if (accept(Token::Slash)) {
        e = binary(NodeKind::Div, e, factor());
      } else {
        return e;
      }
    }
  }

  NodePtr factor() {
    if (accept(Token::Minus)) return unary(NodeKind::Neg, factor());
    NodePtr b = base();
    if (accept(Token::Caret)) {
      long long e = integer_exponent();
      if (e > kMaxExponent || e < -kMaxExponent)
        throw ParseError("exponent bound exceeded (|e| <= " + std::to_string(kMaxExponent) + ")", exp_offset_);
      return power(std::move(b), static_cast<int>(e));
    }
    return b;
  }

  long long integer_exponent() {
    exp_offset_ = cur().offset;
    long long sign = 1;
    if (accept(Token::Minus)) {
      sign = -1;
    } else {
      accept(Token::Plus);
    }
    if (cur().kind != Token::Number || !cur().integral)
      throw ParseError("integer exponent expected", cur().offset);
    long long v = cur().int_value;
    advance();
    return sign * v;
  }

  NodePtr base() {
    const Token& t = cur();
    switch (t.kind) {
      case Token::Number: {
        advance();
        ExprNode n;
        n.kind = NodeKind::Constant;
        n.value = Complex(t.num, 0.0);
        return make_node(std::move(n));
      }
      case Token::Imag: {
        advance();
        ExprNode n;
        n.kind = NodeKind::Constant;
        n.value = Complex(0.0, 1.0);
        return make_node(std::move(n));
      }
      case Token::Coord: {
        if (t.coord < 1 || t.coord > dim_)
          throw ParseError("coordinate index out of range: z" + std::to_string(t.coord) +
                               " (dimension " + std::to_string(dim_) + ")",
                           t.offset);
        advance();
        ExprNode n;
        n.kind = NodeKind::Coord;
        n.coord = t.coord;
        n.max_coord = t.coord;
        return make_node(std::move(n));
      }
      case Token::Conj:
      case Token::Abs2: {
        NodeKind kind = t.kind == Token::Conj ? NodeKind::Conj : NodeKind::Abs2;
        advance();
        expect(Token::LParen, "'('");
        NodePtr inner = expr();
        expect(Token::RParen, "')'");
        return unary(kind, std::move(inner));
      }
      case Token::LParen: {
        advance();
        NodePtr inner = expr();
        expect(Token::RParen, "')'");
        return inner;
      }
      default:
        throw ParseError("expected number, coordinate, or '('", t.offset);
    }
  }

  void expect(Token::Kind k, const char* what) {
    if (!accept(k)) throw ParseError(std::string("expected ") + what, cur().offset);
  }

  std::vector<Token> tokens_;
  int dim_;
  std::size_t pos_ = 0;
  std::size_t exp_offset_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, int n) {
  if (n < 1) throw Error("chart dimension must be >= 1");
  if (text.empty()) throw ParseError("empty input", 0);
  return Expr(Parser(tokenize(text), n).run());
}

// ---------------------------------------------------------------------------
// Printing, equality, substitution

namespace {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void print_node(const ExprNode* e, std::string& out) {
  switch (e->kind) {
    case NodeKind::Constant: {
      const double re = e->value.real(), im = e->value.imag();
      if (im == 0.0) {
        if (re < 0.0) {
          out += "(-" + format_real(-re) + ")";
        } else {
          out += format_real(re);
        }
      } else if (re == 0.0 && im == 1.0) {
        out += "i";
      } else {
        out += "(" + format_real(re) + (im < 0.0 ? "-" : "+") + format_real(std::abs(im)) + "*i)";
      }
      return;
    }
    case NodeKind::Coord:
      out += "z" + std::to_string(e->coord);
      return;
    case NodeKind::Neg:
      out += "(-";
      print_node(e->lhs.get(), out);
      out += ")";
      return;
    case NodeKind::Conj:
    case NodeKind::Abs2:
      out += e->kind == NodeKind::Conj ? "conj(" : "abs2(";
      print_node(e->lhs.get(), out);
      out += ")";
      return;
    case NodeKind::Pow:
      out += "(";
      print_node(e->lhs.get(), out);
      out += "^" + std::to_string(e->exponent) + ")";
      return;
    default: {
      const char* op = e->kind == NodeKind::Add   ? "+"
                       : e->kind == NodeKind::Sub ? "-"
                       : e->kind == NodeKind::Mul ? "*"
                                                  : "/";
      out += "(";
      print_node(e->lhs.get(), out);
      out += op;
      print_node(e->rhs.get(), out);
      out += ")";
      return;
    }
  }
}

bool equal_nodes(const ExprNode* a, const ExprNode* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Constant:
      if (a->value != b->value) return false;
      break;
    case NodeKind::Coord:
      if (a->coord != b->coord) return false;
      break;
    case NodeKind::Pow:
      if (a->exponent != b->exponent) return false;
      break;
    default:
      break;
  }
  if (!equal_nodes(a->lhs.get(), b->lhs.get())) return false;
  return equal_nodes(a->rhs.get(), b->rhs.get());
}

NodePtr substitute_node(const NodePtr& e, std::span<const Expr> comps,
                        std::unordered_map<const ExprNode*, NodePtr>& memo) {
  if (!e) return nullptr;
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  NodePtr result;
  if (e->kind == NodeKind::Coord) {
    const std::size_t k = static_cast<std::size_t>(e->coord);
    if (k > comps.size() || !comps[k - 1])
      throw Error("substitution component missing for coordinate z" + std::to_string(e->coord));
    result = comps[k - 1].root_ptr();
  } else {
    NodePtr l = substitute_node(e->lhs, comps, memo);
    NodePtr r = substitute_node(e->rhs, comps, memo);
    if (l == e->lhs && r == e->rhs) {
      result = e;
    } else {
      ExprNode n;
      n.kind = e->kind;
      n.value = e->value;
      n.coord = e->coord;
      n.exponent = e->exponent;
      n.max_coord = std::max(l ? l->max_coord : 0, r ? r->max_coord : 0);
      n.lhs = std::move(l);
      n.rhs = std::move(r);
      result = make_node(std::move(n));
    }
  }
  memo.emplace(e.get(), result);
  return result;
}

}  // namespace

std::string Expr::to_string() const {
  if (!root_) return "";
  std::string out;
  print_node(root_.get(), out);
  return out;
}

bool Expr::same_tree(const Expr& other) const { return equal_nodes(root_.get(), other.root_.get()); }

Expr Expr::substitute(std::span<const Expr> components) const {
  if (!root_) throw Error("substitute on empty expression");
  std::unordered_map<const ExprNode*, NodePtr> memo;
  return Expr(substitute_node(root_, components, memo));
}

}  // namespace plurigeo
