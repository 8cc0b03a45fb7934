#include "plurigeo/wirtinger.hpp"

#include <cmath>
#include <unordered_map>

#include "plurigeo/errors.hpp"

namespace plurigeo {

namespace {

constexpr double kSingularFloor = 1e-300;

bool finite(const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

struct JetContext {
  const ChartPoint& p;
  int n;
  int order;
  std::unordered_map<const ExprNode*, WirtingerJet> memo;

  int dirs() const { return 2 * n; }
  bool second() const { return order == 2; }

  WirtingerJet constant(Complex c) const {
    WirtingerJet j = WirtingerJet::zero(n, order);
    j.v = c;
    return j;
  }

  WirtingerJet coordinate(int k) const {
    WirtingerJet j = WirtingerJet::zero(n, order);
    j.v = p.z[static_cast<std::size_t>(k) - 1];
    j.d[k - 1] = 1.0;
    return j;
  }

  WirtingerJet add(const WirtingerJet& f, const WirtingerJet& g, double sign) const {
    WirtingerJet h = WirtingerJet::zero(n, order);
    h.v = f.v + sign * g.v;
    for (int a = 0; a < dirs(); ++a) h.d[a] = f.d[a] + sign * g.d[a];
    if (second())
      for (std::size_t k = 0; k < h.dd.size(); ++k) h.dd[k] = f.dd[k] + sign * g.dd[k];
    return h;
  }

  WirtingerJet neg(const WirtingerJet& f) const {
    WirtingerJet h = WirtingerJet::zero(n, order);
    h.v = -f.v;
    for (int a = 0; a < dirs(); ++a) h.d[a] = -f.d[a];
    if (second())
      for (std::size_t k = 0; k < h.dd.size(); ++k) h.dd[k] = -f.dd[k];
    return h;
  }

  WirtingerJet mul(const WirtingerJet& f, const WirtingerJet& g) const {
    WirtingerJet h = WirtingerJet::zero(n, order);
    h.v = f.v * g.v;
    for (int a = 0; a < dirs(); ++a) h.d[a] = f.d[a] * g.v + f.v * g.d[a];
    if (second()) {
      // Fill a <= b and mirror so dd stays exactly symmetric.
      for (int a = 0; a < dirs(); ++a)
        for (int b = a; b < dirs(); ++b) {
          Complex val = f.dd_at(a, b) * g.v + f.d[a] * g.d[b] + f.d[b] * g.d[a] + f.v * g.dd_at(a, b);
          h.dd_at(a, b) = val;
          h.dd_at(b, a) = val;
        }
    }
    return h;
  }

  WirtingerJet div(const WirtingerJet& f, const WirtingerJet& g) const {
    if (std::abs(g.v) < kSingularFloor)
      throw EvalError("singular evaluation: divisor modulus below 1e-300 at " + p.to_string());
    WirtingerJet h = WirtingerJet::zero(n, order);
    h.v = f.v / g.v;
    for (int a = 0; a < dirs(); ++a) h.d[a] = (f.d[a] - h.v * g.d[a]) / g.v;
    if (second()) {
      for (int a = 0; a < dirs(); ++a)
        for (int b = a; b < dirs(); ++b) {
          Complex val = (f.dd_at(a, b) - h.d[a] * g.d[b] - h.d[b] * g.d[a] - h.v * g.dd_at(a, b)) / g.v;
          h.dd_at(a, b) = val;
          h.dd_at(b, a) = val;
        }
    }
    return h;
  }

  // conj(f): value conjugated, index bars flipped.
  WirtingerJet conjugate(const WirtingerJet& f) const {
    WirtingerJet h = WirtingerJet::zero(n, order);
    h.v = std::conj(f.v);
    for (int a = 0; a < dirs(); ++a) h.d[a] = std::conj(f.d[bar_flip(a, n)]);
    if (second()) {
      for (int a = 0; a < dirs(); ++a)
        for (int b = a; b < dirs(); ++b) {
          Complex val = std::conj(f.dd_at(bar_flip(a, n), bar_flip(b, n)));
          h.dd_at(a, b) = val;
          h.dd_at(b, a) = val;
        }
    }
    return h;
  }

  WirtingerJet int_pow(const WirtingerJet& f, int e) const {
    if (e == 0) return constant(1.0);
    if (e < 0) return div(constant(1.0), int_pow(f, -e));
    WirtingerJet h = f;
    for (int k = 1; k < e; ++k) h = mul(h, f);
    return h;
  }

  const WirtingerJet& eval(const ExprNode* e) {
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    WirtingerJet j;
    switch (e->kind) {
      case NodeKind::Constant: j = constant(e->value); break;
      case NodeKind::Coord: j = coordinate(e->coord); break;
      case NodeKind::Neg: j = neg(eval(e->lhs.get())); break;
      case NodeKind::Conj: j = conjugate(eval(e->lhs.get())); break;
      case NodeKind::Abs2: {
        const WirtingerJet& f = eval(e->lhs.get());
        j = mul(f, conjugate(f));
        break;
      }
      case NodeKind::Add: j = add(eval(e->lhs.get()), eval(e->rhs.get()), 1.0); break;
      case NodeKind::Sub: j = add(eval(e->lhs.get()), eval(e->rhs.get()), -1.0); break;
      case NodeKind::Mul: j = mul(eval(e->lhs.get()), eval(e->rhs.get())); break;
      case NodeKind::Div: j = div(eval(e->lhs.get()), eval(e->rhs.get())); break;
      case NodeKind::Pow: j = int_pow(eval(e->lhs.get()), e->exponent); break;
    }
    return memo.emplace(e, std::move(j)).first->second;
  }
};

Complex eval_value_node(const ExprNode* e, const ChartPoint& p,
                        std::unordered_map<const ExprNode*, Complex>& memo) {
  auto it = memo.find(e);
  if (it != memo.end()) return it->second;
  Complex v;
  switch (e->kind) {
    case NodeKind::Constant: v = e->value; break;
    case NodeKind::Coord: v = p.z[static_cast<std::size_t>(e->coord) - 1]; break;
    case NodeKind::Neg: v = -eval_value_node(e->lhs.get(), p, memo); break;
    case NodeKind::Conj: v = std::conj(eval_value_node(e->lhs.get(), p, memo)); break;
    case NodeKind::Abs2: v = std::norm(eval_value_node(e->lhs.get(), p, memo)); break;
    case NodeKind::Add: v = eval_value_node(e->lhs.get(), p, memo) + eval_value_node(e->rhs.get(), p, memo); break;
    case NodeKind::Sub: v = eval_value_node(e->lhs.get(), p, memo) - eval_value_node(e->rhs.get(), p, memo); break;
    case NodeKind::Mul: v = eval_value_node(e->lhs.get(), p, memo) * eval_value_node(e->rhs.get(), p, memo); break;
    case NodeKind::Div: {
      Complex den = eval_value_node(e->rhs.get(), p, memo);
      if (std::abs(den) < kSingularFloor)
        throw EvalError("singular evaluation: divisor modulus below 1e-300 at " + p.to_string());
      v = eval_value_node(e->lhs.get(), p, memo) / den;
      break;
    }
    case NodeKind::Pow: {
      int ex = e->exponent;
      Complex base = eval_value_node(e->lhs.get(), p, memo);
      if (ex == 0) {
        v = 1.0;
      } else {
        Complex acc = base;
        for (int k = 1; k < std::abs(ex); ++k) acc *= base;
        if (ex < 0) {
          if (std::abs(acc) < kSingularFloor)
            throw EvalError("singular evaluation: divisor modulus below 1e-300 at " + p.to_string());
          acc = 1.0 / acc;
        }
        v = acc;
      }
      break;
    }
  }
  memo.emplace(e, v);
  return v;
}

}  // namespace

WirtingerJet WirtingerJet::zero(int n, int order) {
  WirtingerJet j;
  j.n = n;
  j.order = order;
  j.d.assign(static_cast<std::size_t>(2 * n), Complex{});
  if (order == 2) j.dd.assign(static_cast<std::size_t>(2 * n) * (2 * n), Complex{});
  return j;
}

WirtingerJet eval_jet(const Expr& e, const ChartPoint& p, int order) {
  if (!e) throw Error("eval_jet on empty expression");
  if (order != 1 && order != 2) throw Error("jet order must be 1 or 2");
  if (e.max_coord() > p.dim())
    throw Error("expression references z" + std::to_string(e.max_coord()) + " but point has dimension " +
                std::to_string(p.dim()));
  JetContext ctx{p, p.dim(), order, {}};
  WirtingerJet j = ctx.eval(e.root());
  bool ok = finite(j.v);
  for (const auto& c : j.d) ok = ok && finite(c);
  for (const auto& c : j.dd) ok = ok && finite(c);
  if (!ok) throw EvalError("non-finite value in jet evaluation at " + p.to_string());
  return j;
}

Complex eval_value(const Expr& e, const ChartPoint& p) {
  if (!e) throw Error("eval_value on empty expression");
  if (e.max_coord() > p.dim())
    throw Error("expression references z" + std::to_string(e.max_coord()) + " but point has dimension " +
                std::to_string(p.dim()));
  std::unordered_map<const ExprNode*, Complex> memo;
  Complex v = eval_value_node(e.root(), p, memo);
  if (!finite(v)) throw EvalError("non-finite value in evaluation at " + p.to_string());
  return v;
}

std::string ChartPoint::to_string() const {
  std::string out = "(";
  char buf[64];
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (k) out += ", ";
    std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", z[k].real(), z[k].imag());
    out += buf;
  }
  out += ")";
  return out;
}

}  // namespace plurigeo
