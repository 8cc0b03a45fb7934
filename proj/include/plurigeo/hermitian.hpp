#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "plurigeo/expr.hpp"
#include "plurigeo/types.hpp"
#include "plurigeo/wirtinger.hpp"

namespace plurigeo {

// Hermitian metric in a holomorphic chart: only the mixed components
// g_{i j̄}(z) are stored (row i, column j̄).  Points with |z| below the
// exclusion radius are rejected.
struct HermitianMetricField {
  int n = 0;
  std::vector<Expr> g;  // n*n row-major
  double exclusion_radius = 0.0;
  std::string name;

  const Expr& entry(int i, int j) const { return g[static_cast<std::size_t>(i) * n + j]; }
};

// Metric values and first derivatives at a point:
//   g(i,j)     = g_{i j̄}(p)
//   dg[A](i,j) = ∂_A g_{i j̄}(p)  for A over the 2n complexified directions.
struct MetricJet {
  ComplexMatrix g;
  std::vector<ComplexMatrix> dg;
};

bool admissible(const HermitianMetricField& m, const ChartPoint& p);

// Entrywise order-1 jets, with the type invariants checked rather than
// assumed: Hermitian symmetry of values and derivatives to 1e-10 absolute,
// smallest eigenvalue > 1e-10.
MetricJet metric_at(const HermitianMetricField& m, const ChartPoint& p);

// Inverse with the convention Σ_j g^{i j̄} g_{k j̄} = δ_{ik}; for a Hermitian
// value matrix this is the transpose of the ordinary inverse.  Throws when the
// condition number exceeds 1e12 or the contraction residual exceeds 1e-10.
ComplexMatrix inverse_metric(const ComplexMatrix& g);

// Catalog: "flat", "hopf" (n >= 2, exclusion radius 0.3), "fubini_study".
HermitianMetricField catalog_metric(const std::string& name, int n);

// g_{i j̄} = f(z) δ_ij for a positive rational conformal factor; positivity is
// probed at deterministic sample points.
HermitianMetricField conformal_metric(const Expr& factor, int n, double exclusion_radius);

inline HermitianMetricField flat_metric(int n) { return catalog_metric("flat", n); }

// JSON schema: { "name": string, "dimension": n, "exclusion_radius": number,
//                "g": [[expr-string x n] x n] }, rows i = 1..n, columns j̄.
HermitianMetricField load_metric_file(const std::filesystem::path& path);

}  // namespace plurigeo
