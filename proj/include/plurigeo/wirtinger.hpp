#pragma once

#include <vector>

#include "plurigeo/expr.hpp"
#include "plurigeo/types.hpp"

namespace plurigeo {

// Value plus Wirtinger derivatives of a complex quantity at a chart point.
// First derivatives d[A] and mixed second derivatives dd(A,B) are taken with
// respect to the 2n complexified directions, z^i and z̄^i treated as
// independent.  Order-1 jets omit dd.
struct WirtingerJet {
  Complex v{};
  std::vector<Complex> d;   // size 2n
  std::vector<Complex> dd;  // row-major (2n)x(2n); empty when order == 1
  int n = 0;
  int order = 1;

  static WirtingerJet zero(int n, int order);

  int dirs() const { return 2 * n; }
  Complex& dd_at(int a, int b) { return dd[static_cast<std::size_t>(a) * dirs() + b]; }
  const Complex& dd_at(int a, int b) const { return dd[static_cast<std::size_t>(a) * dirs() + b]; }
};

// Exact forward-mode differentiation of e at p.  Seeds: coordinate k has
// v = z^k, d[k] = 1; conj flips index bars and conjugates entries; arithmetic
// follows bilinear product/quotient/chain rules.  Throws EvalError when a
// divisor modulus drops below 1e-300 or any jet entry overflows to non-finite.
WirtingerJet eval_jet(const Expr& e, const ChartPoint& p, int order);

// Value-only evaluation with the same pole and finiteness guards.
Complex eval_value(const Expr& e, const ChartPoint& p);

}  // namespace plurigeo
