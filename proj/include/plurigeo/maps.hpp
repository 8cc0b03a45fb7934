#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "plurigeo/connection.hpp"
#include "plurigeo/hermitian.hpp"
#include "plurigeo/types.hpp"
#include "plurigeo/wirtinger.hpp"

namespace plurigeo {

// Smooth map φ between charts, given by r expressions for the unbarred target
// components in z^1..z^n and their conjugates.  Barred components are
// conj(φ^α) by construction and never stored.
struct MapField {
  int source_dim = 0;
  int target_dim = 0;
  std::vector<Expr> components;
  std::string name;
  std::string target_metric_ref;  // catalog name or metric-file path; empty = flat
};

// Order-2 jets of every component at a point, plus the image point.
struct MapJets {
  std::vector<WirtingerJet> comp;
  ChartPoint image;
  int n = 0, r = 0;

  // ∂_C φ^J for J over the 2r target indices (barred components via
  // ∂_C conj(φ^β) = conj(∂_C̄ φ^β)) and C over the 2n source directions.
  Complex d(int j, int c) const {
    if (j < r) return comp[static_cast<std::size_t>(j)].d[static_cast<std::size_t>(c)];
    return std::conj(comp[static_cast<std::size_t>(j - r)].d[static_cast<std::size_t>(bar_flip(c, n))]);
  }
};

MapJets map_jets(const MapField& phi, const ChartPoint& p);

// Tensor T^α_{i j̄} for unbarred α in [0,r); barred components are recovered
// from conj(T^α_{i j̄}) = T^{ᾱ}_{j ī}.
struct MixedTensor {
  int r = 0, n = 0;
  std::vector<Complex> a;

  MixedTensor() = default;
  MixedTensor(int r_, int n_)
      : r(r_), n(n_), a(static_cast<std::size_t>(r_) * n_ * n_) {}

  Complex& at(int alpha, int i, int j) { return a[(static_cast<std::size_t>(alpha) * n + i) * n + j]; }
  const Complex& at(int alpha, int i, int j) const { return a[(static_cast<std::size_t>(alpha) * n + i) * n + j]; }
  double max_abs() const;
};

struct HolomorphyDefects {
  ComplexMatrix dbar;   // [α][j] = ∂φ^α/∂z̄^j, zero iff holomorphic
  ComplexMatrix dpart;  // [α][j] = ∂φ^α/∂z^j,  zero iff antiholomorphic
};

HolomorphyDefects holomorphy_residual(const MapField& phi, const ChartPoint& p);

// R^α_{i j̄} = ∂²φ^α/∂z^i∂z̄^j + Σ_{J,L} Γ^α_{JL}(φ(p)) ∂_i φ^J ∂_j̄ φ^L with
// target Christoffels at the image point; a flat target contributes nothing.
MixedTensor pluriharmonic_residual(const MapField& phi, const HermitianMetricField& target, const ChartPoint& p);

// S^α_{i j̄} = R^α_{i j̄} − Σ_C Γ^C_{i j̄}(p) ∂_C φ^α with C over all 2n
// source directions.
MixedTensor one_one_geodesic_residual(const MapField& phi, const HermitianMetricField& source,
                                      const HermitianMetricField& target, const ChartPoint& p);

// τ^α = Σ_{i,j} g^{i j̄}(p) S^α_{i j̄}; constant factors dropped (zero-test).
std::vector<Complex> harmonic_residual(const MapField& phi, const HermitianMetricField& source,
                                       const HermitianMetricField& target, const ChartPoint& p);

// φ∘ψ by substituting ψ's component expressions into φ's trees.
MapField compose(const MapField& outer, const MapField& inner);

// JSON schema: { "name": string, "source_dimension": n, "target_dimension": r,
//   "components": [expr-string x r], "target_metric": optional catalog name or
//   metric-file path (resolved relative to the map file; default "flat") }.
MapField load_map_file(const std::filesystem::path& path);

struct MapSample {
  double dbar_defect = 0.0;  // max|∂φ/∂z̄|
  double d_defect = 0.0;     // max|∂φ/∂z|
  double pluriharmonic = 0.0;
  double one_one_geodesic = 0.0;
  double harmonic = 0.0;
};

struct ResidualReport {
  std::string map_name;
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::vector<ChartPoint> samples;
  std::vector<MapSample> per_sample;
  double max_dbar_defect = 0.0;
  double max_d_defect = 0.0;
  double max_pluriharmonic = 0.0;
  double max_one_one_geodesic = 0.0;
  double max_harmonic = 0.0;
  bool holomorphic = false;
  bool antiholomorphic = false;
  bool pluriharmonic = false;
  bool one_one_geodesic = false;
  bool harmonic = false;
};

ResidualReport evaluate_map_report(const MapField& phi, const HermitianMetricField& source,
                                   const HermitianMetricField& target,
                                   const std::vector<ChartPoint>& samples, double tol);

}  // namespace plurigeo
