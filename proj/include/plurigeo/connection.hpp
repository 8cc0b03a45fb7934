#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plurigeo/hermitian.hpp"
#include "plurigeo/types.hpp"

namespace plurigeo {

// Complexified Levi-Civita coefficients Γ^C_{AB} of a Hermitian metric in a
// holomorphic chart.  Stored blocks (all k,i,j in [0,n)):
//   uu[k,i,j]        = Γ^k_{ij}
//   mixed[k,i,j]     = Γ^k_{i j̄}
//   mixed_bar[k,i,j] = Γ^{k̄}_{i j̄}
// Γ^{k̄}_{ij} and Γ^k_{ī j̄} vanish identically; every other coefficient
// follows from lower-index symmetry and Γ^{C̄}_{Ā B̄} = conj(Γ^C_{AB}).
struct ChristoffelTable {
  int n = 0;
  std::vector<Complex> uu, mixed, mixed_bar;

  explicit ChristoffelTable(int dim)
      : n(dim),
        uu(static_cast<std::size_t>(dim) * dim * dim),
        mixed(uu.size()),
        mixed_bar(uu.size()) {}

  std::size_t idx(int k, int i, int j) const {
    return (static_cast<std::size_t>(k) * n + i) * n + j;
  }
  Complex gamma_uu(int k, int i, int j) const { return uu[idx(k, i, j)]; }
  Complex gamma_mixed(int k, int i, int j) const { return mixed[idx(k, i, j)]; }
  Complex gamma_mixed_bar(int k, int i, int j) const { return mixed_bar[idx(k, i, j)]; }

  // Full coefficient Γ^c_{ab} with c, a, b over all 2n complexified indices.
  Complex gamma(int c, int a, int b) const;
};

ChristoffelTable christoffel(const HermitianMetricField& m, const ChartPoint& p);

// d ω residual tensors with the i/2π normalization dropped:
//   r12[λ,k,μ] = ∂_k̄ g_{λ μ̄} − ∂_μ̄ g_{λ k̄}    ((1,2)-part)
//   r21[k,λ,μ] = ∂_k  g_{λ μ̄} − ∂_λ  g_{k μ̄}    ((2,1)-part)
struct FundamentalFormResiduals {
  int n = 0;
  std::vector<Complex> r12, r21;

  std::size_t idx(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * n + b) * n + c;
  }
  double max_abs_r12() const;
  double max_abs_r21() const;
};

FundamentalFormResiduals fundamental_form_residuals(const HermitianMetricField& m, const ChartPoint& p);

// T^α = Σ_{λ,μ} g^{λ μ̄} Γ^α_{λ μ̄}; vanishes exactly on cosymplectic metrics.
std::vector<Complex> cosymplectic_trace(const HermitianMetricField& m, const ChartPoint& p);

struct StructureSample {
  double integrability = 0.0;  // identically zero for holomorphic-chart input
  double one_two_symplectic = 0.0;
  double kaehler = 0.0;
  double cosymplectic = 0.0;
  std::vector<Complex> trace;
};

struct StructureReport {
  std::string metric_name;
  int n = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::vector<ChartPoint> samples;      // admissible samples, generation order
  std::vector<StructureSample> per_sample;
  double max_integrability = 0.0;
  double max_one_two_symplectic = 0.0;
  double max_kaehler = 0.0;
  double max_cosymplectic = 0.0;
  bool integrable = true;
  bool one_two_symplectic = false;
  bool kaehler = false;
  bool cosymplectic = false;
};

// Residual maxima over the admissible samples with verdicts at tol.
// Kähler residual = max(|Γ^{k̄}_{i j̄}|, |Γ^k_{i j̄}|) dominates the
// (1,2)-symplectic residual, so kaehler ⟹ one_two_symplectic structurally.
StructureReport classify(const HermitianMetricField& m, const std::vector<ChartPoint>& samples, double tol);

}  // namespace plurigeo
