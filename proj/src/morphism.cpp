#include "plurigeo/morphism.hpp"

#include <cmath>

#include "plurigeo/errors.hpp"

namespace plurigeo {

MorphismVerdict is_pluriharmonic_morphism(const MapField& psi, const HermitianMetricField& source,
                                          const HermitianMetricField& target,
                                          const std::vector<ChartPoint>& samples, double tol) {
  if (tol <= 0.0) throw Error("is_pluriharmonic_morphism: tolerance must be positive");
  MorphismVerdict v;
  v.tol = tol;
  for (const auto& p : samples) {
    if (!admissible(source, p)) continue;
    MapJets jets = map_jets(psi, p);
    for (int alpha = 0; alpha < jets.r; ++alpha)
      for (int j = 0; j < jets.n; ++j) {
        v.dbar_defect_max = std::max(v.dbar_defect_max,
                                     std::abs(jets.comp[static_cast<std::size_t>(alpha)].d[static_cast<std::size_t>(jets.n + j)]));
        v.d_defect_max = std::max(v.d_defect_max,
                                  std::abs(jets.comp[static_cast<std::size_t>(alpha)].d[static_cast<std::size_t>(j)]));
      }
    v.ph_residual_max = std::max(v.ph_residual_max, pluriharmonic_residual(psi, target, p).max_abs());
    ++v.samples_used;
  }
  if (v.samples_used == 0)
    throw MetricError("is_pluriharmonic_morphism: no admissible samples for map '" + psi.name + "'");
  v.holomorphic = v.dbar_defect_max < tol;
  v.antiholomorphic = v.d_defect_max < tol;
  v.pluriharmonic = v.ph_residual_max < tol;
  v.morphism = (v.holomorphic || v.antiholomorphic) && v.pluriharmonic;
  return v;
}

ChainRuleResult chain_rule_check(const MapField& psi, const MapField& phi,
                                 const HermitianMetricField& metric_n,
                                 const HermitianMetricField& metric_p, const ChartPoint& p) {
  if (psi.target_dim != phi.source_dim)
    throw Error("chain_rule_check: psi maps into dimension " + std::to_string(psi.target_dim) +
                " but phi expects " + std::to_string(phi.source_dim));
  if (metric_n.n != psi.target_dim) throw Error("chain_rule_check: middle metric dimension mismatch");
  if (metric_p.n != phi.target_dim) throw Error("chain_rule_check: target metric dimension mismatch");

  const int n = psi.source_dim;   // dim M
  const int m = psi.target_dim;   // dim N
  const int r = phi.target_dim;   // dim P

  // Independent route 1: substitute and differentiate the composition.
  ChainRuleResult out;
  out.lhs = pluriharmonic_residual(compose(phi, psi), metric_p, p);

  // Independent route 2: assemble the two chain-rule terms.
  MapJets jpsi = map_jets(psi, p);
  if (!admissible(metric_n, jpsi.image))
    throw MetricError("chain_rule_check: image of psi inadmissible for metric '" + metric_n.name + "'");
  MapJets jphi = map_jets(phi, jpsi.image);
  if (!admissible(metric_p, jphi.image))
    throw MetricError("chain_rule_check: image of phi inadmissible for metric '" + metric_p.name + "'");

  ChristoffelTable gamma_n = christoffel(metric_n, jpsi.image);
  ChristoffelTable gamma_p = christoffel(metric_p, jphi.image);

  // Pluriharmonic residual of ψ with respect to the middle metric, for the
  // unbarred components; barred entries follow by conj(R^β_{i j̄}) = R^{β̄}_{j ī}.
  MixedTensor r_psi(m, n);
  for (int beta = 0; beta < m; ++beta)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Complex s = jpsi.comp[static_cast<std::size_t>(beta)].dd_at(i, n + j);
        for (int J = 0; J < 2 * m; ++J)
          for (int L = 0; L < 2 * m; ++L) {
            Complex g = gamma_n.gamma(beta, J, L);
            if (g != Complex{}) s += g * jpsi.d(J, i) * jpsi.d(L, n + j);
          }
        r_psi.at(beta, i, j) = s;
      }
  auto r_psi_full = [&](int c, int i, int j) -> Complex {
    return c < m ? r_psi.at(c, i, j) : std::conj(r_psi.at(c - m, j, i));
  };

  // Full second fundamental form of φ with respect to (metric N, metric P):
  //   H^α_{AB} = ∂²φ^α/∂y^A∂y^B − Γ_N^C_{AB} ∂_C φ^α + Γ_P^α_{JL} ∂_A φ^J ∂_B φ^L.
  std::vector<Complex> hess(static_cast<std::size_t>(r) * (2 * m) * (2 * m));
  auto hess_at = [&](int alpha, int a, int b) -> Complex& {
    return hess[(static_cast<std::size_t>(alpha) * (2 * m) + a) * (2 * m) + b];
  };
  for (int alpha = 0; alpha < r; ++alpha)
    for (int a = 0; a < 2 * m; ++a)
      for (int b = 0; b < 2 * m; ++b) {
        // ∂²φ^α over arbitrary index pairs, via the bar-flip conjugation rule.
        const WirtingerJet& jet = jphi.comp[static_cast<std::size_t>(alpha)];
        Complex s = jet.dd_at(a, b);
        for (int c = 0; c < 2 * m; ++c) {
          Complex g = gamma_n.gamma(c, a, b);
          if (g != Complex{}) s -= g * jet.d[static_cast<std::size_t>(c)];
        }
        for (int J = 0; J < 2 * r; ++J)
          for (int L = 0; L < 2 * r; ++L) {
            Complex g = gamma_p.gamma(alpha, J, L);
            if (g != Complex{}) s += g * jphi.d(J, a) * jphi.d(L, b);
          }
        hess_at(alpha, a, b) = s;
      }

  out.rhs = MixedTensor(r, n);
  for (int alpha = 0; alpha < r; ++alpha)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Complex s = 0.0;
        for (int a = 0; a < 2 * m; ++a)
          for (int b = 0; b < 2 * m; ++b) s += jpsi.d(a, i) * jpsi.d(b, n + j) * hess_at(alpha, a, b);
        for (int c = 0; c < 2 * m; ++c)
          s += jphi.comp[static_cast<std::size_t>(alpha)].d[static_cast<std::size_t>(c)] * r_psi_full(c, i, j);
        out.rhs.at(alpha, i, j) = s;
      }

  for (std::size_t k = 0; k < out.lhs.a.size(); ++k)
    out.max_difference = std::max(out.max_difference, std::abs(out.lhs.a[k] - out.rhs.a[k]));
  return out;
}

MapField jet_test_function(const std::vector<Complex>& first, const std::vector<Complex>& second) {
  if (first.empty() || first.size() % 2 != 0) throw Error("jet_test_function: first jet must have 2n entries");
  const int n = static_cast<int>(first.size() / 2);
  const int dirs = 2 * n;
  if (second.size() != static_cast<std::size_t>(dirs) * dirs)
    throw Error("jet_test_function: second jet must have (2n)^2 entries");
  auto c2 = [&](int a, int b) { return second[static_cast<std::size_t>(a) * dirs + b]; };
  for (int a = 0; a < dirs; ++a)
    for (int b = 0; b < dirs; ++b) {
      if (c2(a, b) != c2(b, a)) throw Error("jet_test_function: second-derivative coefficients must be symmetric");
      if (is_barred(a, n) != is_barred(b, n) && c2(a, b) != Complex{})
        throw Error("jet_test_function: mixed-type second derivatives are incompatible with "
                    "pluriharmonicity of a holomorphic + antiholomorphic sum");
    }

  auto direction = [&](int a) { return a < n ? Expr::coord(a + 1) : conj(Expr::coord(a - n + 1)); };

  Expr h = Expr::number(0.0);
  bool empty = true;
  auto accumulate = [&](const Expr& term) {
    h = empty ? term : h + term;
    empty = false;
  };
  for (int a = 0; a < dirs; ++a)
    if (first[static_cast<std::size_t>(a)] != Complex{})
      accumulate(Expr::constant(first[static_cast<std::size_t>(a)]) * direction(a));
  for (int a = 0; a < dirs; ++a)
    for (int b = a; b < dirs; ++b) {
      Complex c = c2(a, b);
      if (c == Complex{}) continue;
      double weight = (a == b) ? 0.5 : 1.0;  // ½ Σ over ordered pairs
      accumulate(Expr::constant(weight * c) * direction(a) * direction(b));
    }

  MapField out;
  out.source_dim = n;
  out.target_dim = 1;
  out.components = {h};
  out.name = "jet_test";
  out.target_metric_ref = "flat";
  return out;
}

PullbackReport pullback_check(const MapField& psi, const MapField& phi,
                              const HermitianMetricField& metric_n, const HermitianMetricField& metric_p,
                              const std::vector<ChartPoint>& samples, double tol) {
  PullbackReport rep;
  rep.tol = tol;
  rep.psi_verdict = is_pluriharmonic_morphism(psi, flat_metric(psi.source_dim), metric_n, samples, tol);
  if (!rep.psi_verdict.morphism)
    throw Error("pullback_check: '" + psi.name + "' is not a pluriharmonic morphism");

  MapField composed = compose(phi, psi);
  int used = 0;
  for (const auto& p : samples) {
    MapJets jets = map_jets(psi, p);
    if (!admissible(metric_n, jets.image)) continue;
    rep.phi_ph_max = std::max(rep.phi_ph_max, pluriharmonic_residual(phi, metric_p, jets.image).max_abs());
    rep.composed_ph_max = std::max(rep.composed_ph_max, pluriharmonic_residual(composed, metric_p, p).max_abs());
    ++used;
  }
  if (used == 0) throw MetricError("pullback_check: no samples with admissible images");
  if (rep.phi_ph_max >= tol)
    throw Error("pullback_check: '" + phi.name + "' is not pluriharmonic on the image samples");
  rep.pass = rep.composed_ph_max < tol;
  return rep;
}

}  // namespace plurigeo
