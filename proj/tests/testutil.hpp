#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "plurigeo/expr.hpp"
#include "plurigeo/maps.hpp"
#include "plurigeo/types.hpp"

namespace testutil {

using plurigeo::ChartPoint;
using plurigeo::Complex;
using plurigeo::Expr;
using plurigeo::ExprNode;
using plurigeo::MapField;
using plurigeo::NodeKind;

inline ChartPoint pt(std::vector<Complex> z) { return ChartPoint{std::move(z)}; }

inline bool close(const Complex& a, const Complex& b, double tol) { return std::abs(a - b) <= tol; }

// |a - b| <= tol * max(1, |a|, |b|)
inline bool rel_close(const Complex& a, const Complex& b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  double u01() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * u01(); }
  int uniform_int(int a, int b) { return a + static_cast<int>(g() % static_cast<std::uint64_t>(b - a + 1)); }
  Complex coeff(double scale = 1.0) { return Complex(uniform(-scale, scale), uniform(-scale, scale)); }

  ChartPoint point(int n, double box = 2.0, double exclusion = 0.0) {
    for (;;) {
      ChartPoint p;
      p.z.resize(static_cast<std::size_t>(n));
      for (auto& c : p.z) c = Complex(uniform(-box, box), uniform(-box, box));
      if (p.norm() >= exclusion) return p;
    }
  }
};

inline Expr random_monomial(Rng& rng, int n, int max_deg, bool conjugated, double scale = 1.0) {
  int deg = rng.uniform_int(0, max_deg);
  Expr e = Expr::constant(rng.coeff(scale));
  for (int d = 0; d < deg; ++d) {
    Expr z = Expr::coord(rng.uniform_int(1, n));
    e = e * (conjugated ? conj(z) : z);
  }
  return e;
}

inline Expr random_poly(Rng& rng, int n, int max_deg, int terms, bool conjugated, double scale = 1.0) {
  Expr e = random_monomial(rng, n, max_deg, conjugated, scale);
  for (int t = 1; t < terms; ++t) e = e + random_monomial(rng, n, max_deg, conjugated, scale);
  return e;
}

// Holomorphic + antiholomorphic + cross products: a generic smooth map.
inline Expr random_mixed_expr(Rng& rng, int n, int max_deg) {
  Expr e = random_poly(rng, n, max_deg, 2, false) + random_poly(rng, n, max_deg, 2, true);
  return e + random_monomial(rng, n, std::max(0, max_deg - 1), false, 0.5) * conj(Expr::coord(rng.uniform_int(1, n)));
}

// Rational expression with a pole-free denominator 1 + Σ abs2(...).
inline Expr random_rational(Rng& rng, int n, int max_deg) {
  Expr num = random_mixed_expr(rng, n, max_deg);
  Expr den = Expr::number(1.0) + abs2(Expr::coord(rng.uniform_int(1, n)));
  return random_mixed_expr(rng, n, max_deg) + num / den;
}

inline MapField random_holomorphic_map(Rng& rng, int n, int r, int max_deg, const std::string& name) {
  MapField m;
  m.source_dim = n;
  m.target_dim = r;
  m.name = name;
  for (int alpha = 0; alpha < r; ++alpha) m.components.push_back(random_poly(rng, n, max_deg, 3, false));
  return m;
}

inline MapField random_antiholomorphic_map(Rng& rng, int n, int r, int max_deg, const std::string& name) {
  MapField m;
  m.source_dim = n;
  m.target_dim = r;
  m.name = name;
  for (int alpha = 0; alpha < r; ++alpha) m.components.push_back(random_poly(rng, n, max_deg, 3, true));
  return m;
}

inline MapField random_mixed_map(Rng& rng, int n, int r, int max_deg, const std::string& name) {
  MapField m;
  m.source_dim = n;
  m.target_dim = r;
  m.name = name;
  for (int alpha = 0; alpha < r; ++alpha) {
    Expr e = Expr::coord(1) + conj(Expr::coord(std::min(2, n)));
    m.components.push_back(e + random_mixed_expr(rng, n, max_deg));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Finite-difference oracle.  Uses its own recursive value evaluator over the
// public node API so it stays independent of the jet rules it checks.

inline Complex oracle_value(const ExprNode* e, const std::vector<Complex>& z) {
  switch (e->kind) {
    case NodeKind::Constant: return e->value;
    case NodeKind::Coord: return z[static_cast<std::size_t>(e->coord) - 1];
    case NodeKind::Neg: return -oracle_value(e->lhs.get(), z);
    case NodeKind::Conj: return std::conj(oracle_value(e->lhs.get(), z));
    case NodeKind::Abs2: {
      Complex v = oracle_value(e->lhs.get(), z);
      return v * std::conj(v);
    }
    case NodeKind::Add: return oracle_value(e->lhs.get(), z) + oracle_value(e->rhs.get(), z);
    case NodeKind::Sub: return oracle_value(e->lhs.get(), z) - oracle_value(e->rhs.get(), z);
    case NodeKind::Mul: return oracle_value(e->lhs.get(), z) * oracle_value(e->rhs.get(), z);
    case NodeKind::Div: return oracle_value(e->lhs.get(), z) / oracle_value(e->rhs.get(), z);
    case NodeKind::Pow: {
      Complex base = oracle_value(e->lhs.get(), z);
      if (e->exponent == 0) return 1.0;
      Complex acc = base;
      for (int k = 1; k < std::abs(e->exponent); ++k) acc *= base;
      return e->exponent < 0 ? 1.0 / acc : acc;
    }
  }
  return {};
}

// Real-direction shift: directions 2k / 2k+1 move Re / Im of coordinate k.
inline std::vector<Complex> shifted(const ChartPoint& p, int real_dir, double h) {
  std::vector<Complex> z = p.z;
  const std::size_t k = static_cast<std::size_t>(real_dir / 2);
  if (real_dir % 2 == 0)
    z[k] += h;
  else
    z[k] += Complex(0.0, h);
  return z;
}

// Wirtinger weights: ∂/∂z^k = ½(∂/∂x_k − i ∂/∂y_k), ∂/∂z̄^k = ½(∂/∂x_k + i ∂/∂y_k).
inline std::vector<std::pair<int, Complex>> wirtinger_weights(int a, int n) {
  const int k = a < n ? a : a - n;
  const Complex iw = a < n ? Complex(0.0, -0.5) : Complex(0.0, 0.5);
  return {{2 * k, Complex(0.5, 0.0)}, {2 * k + 1, iw}};
}

inline Complex fd_first(const Expr& e, const ChartPoint& p, int a, double h) {
  Complex out = 0.0;
  for (const auto& [dir, w] : wirtinger_weights(a, p.dim())) {
    Complex plus = oracle_value(e.root(), shifted(p, dir, h));
    Complex minus = oracle_value(e.root(), shifted(p, dir, -h));
    out += w * (plus - minus) / (2.0 * h);
  }
  return out;
}

inline Complex fd_second(const Expr& e, const ChartPoint& p, int a, int b, double h) {
  Complex out = 0.0;
  const Complex f0 = oracle_value(e.root(), p.z);
  for (const auto& [du, wu] : wirtinger_weights(a, p.dim()))
    for (const auto& [dv, wv] : wirtinger_weights(b, p.dim())) {
      Complex dd;
      if (du == dv) {
        Complex plus = oracle_value(e.root(), shifted(p, du, h));
        Complex minus = oracle_value(e.root(), shifted(p, du, -h));
        dd = (plus - 2.0 * f0 + minus) / (h * h);
      } else {
        ChartPoint pp{shifted(p, du, h)}, pm{shifted(p, du, h)}, mp{shifted(p, du, -h)}, mm{shifted(p, du, -h)};
        Complex fpp = oracle_value(e.root(), shifted(pp, dv, h));
        Complex fpm = oracle_value(e.root(), shifted(pm, dv, -h));
        Complex fmp = oracle_value(e.root(), shifted(mp, dv, h));
        Complex fmm = oracle_value(e.root(), shifted(mm, dv, -h));
        dd = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
      }
      out += wu * wv * dd;
    }
  return out;
}

}  // namespace testutil
