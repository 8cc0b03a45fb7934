#pragma once

#include <vector>

#include "plurigeo/maps.hpp"

namespace plurigeo {

// A pluriharmonic morphism between Hermitian charts is exactly a ±holomorphic
// pluriharmonic map; the verdict is assembled from sampled residual maxima.
struct MorphismVerdict {
  bool holomorphic = false;
  bool antiholomorphic = false;
  bool pluriharmonic = false;
  bool morphism = false;
  double dbar_defect_max = 0.0;  // obstruction to holomorphy
  double d_defect_max = 0.0;     // obstruction to antiholomorphy
  double ph_residual_max = 0.0;
  double tol = 0.0;
  int samples_used = 0;
};

// The source metric only gates sample admissibility; neither holomorphy nor
// the pluriharmonicity equation involves it.
MorphismVerdict is_pluriharmonic_morphism(const MapField& psi, const HermitianMetricField& source,
                                          const HermitianMetricField& target,
                                          const std::vector<ChartPoint>& samples, double tol);

// Chain rule for the (0,1)-covariant derivative of d' under composition
// φ∘ψ with ψ: M→N and φ: N→P:
//   lhs = pluriharmonic residual of the substituted expression φ∘ψ,
//   rhs = ∇dφ(d″ψ, d′ψ) + dφ(∇^{(0,1)}d′ψ),
// computed by genuinely independent routes.
struct ChainRuleResult {
  MixedTensor lhs, rhs;
  double max_difference = 0.0;
};

ChainRuleResult chain_rule_check(const MapField& psi, const MapField& phi,
                                 const HermitianMetricField& metric_n,
                                 const HermitianMetricField& metric_p, const ChartPoint& p);

// Polynomial function h = Σ C_A y^A + ½ Σ C_AB y^A y^B into flat ℂ with
// prescribed first and second derivatives at the origin.  first has 2n
// entries; second is (2n)² row-major, symmetric, and may prescribe only
// same-type index pairs (a mixed-type entry would contradict
// pluriharmonicity of a ±holomorphic sum).
MapField jet_test_function(const std::vector<Complex>& first, const std::vector<Complex>& second);

struct PullbackReport {
  MorphismVerdict psi_verdict;
  double phi_ph_max = 0.0;
  double composed_ph_max = 0.0;
  bool pass = false;
  double tol = 0.0;
};

// Requires psi to be a pluriharmonic morphism and φ pluriharmonic on the
// image samples; reports the pluriharmonic residual of φ∘ψ.
PullbackReport pullback_check(const MapField& psi, const MapField& phi,
                              const HermitianMetricField& metric_n, const HermitianMetricField& metric_p,
                              const std::vector<ChartPoint>& samples, double tol);

}  // namespace plurigeo
