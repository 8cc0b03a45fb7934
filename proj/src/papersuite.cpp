#include "plurigeo/papersuite.hpp"

#include <cmath>
#include <random>

#include "plurigeo/connection.hpp"
#include "plurigeo/errors.hpp"
#include "plurigeo/hermitian.hpp"
#include "plurigeo/maps.hpp"
#include "plurigeo/morphism.hpp"
#include "plurigeo/sampling.hpp"

namespace plurigeo {

namespace {

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  double u01() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * u01(); }
  int uniform_int(int a, int b) { return a + static_cast<int>(g() % static_cast<std::uint64_t>(b - a + 1)); }
  Complex coeff(double scale = 1.0) { return Complex(uniform(-scale, scale), uniform(-scale, scale)); }
};

Expr random_monomial(Rng& rng, int n, int max_deg, bool conjugated, double scale) {
  int deg = rng.uniform_int(0, max_deg);
  Expr e = Expr::constant(rng.coeff(scale));
  for (int d = 0; d < deg; ++d) {
    Expr z = Expr::coord(rng.uniform_int(1, n));
    e = e * (conjugated ? conj(z) : z);
  }
  return e;
}

Expr random_poly(Rng& rng, int n, int max_deg, int terms, bool conjugated, double scale = 1.0) {
  Expr e = random_monomial(rng, n, max_deg, conjugated, scale);
  for (int t = 1; t < terms; ++t) e = e + random_monomial(rng, n, max_deg, conjugated, scale);
  return e;
}

MapField random_holomorphic_map(Rng& rng, int n, int r, int max_deg, const std::string& name) {
  MapField m;
  m.source_dim = n;
  m.target_dim = r;
  m.name = name;
  for (int alpha = 0; alpha < r; ++alpha) m.components.push_back(random_poly(rng, n, max_deg, 3, false));
  return m;
}

MapField random_antiholomorphic_map(Rng& rng, int n, int r, int max_deg, const std::string& name) {
  MapField m;
  m.source_dim = n;
  m.target_dim = r;
  m.name = name;
  for (int alpha = 0; alpha < r; ++alpha) m.components.push_back(random_poly(rng, n, max_deg, 3, true));
  return m;
}

// Holomorphic + antiholomorphic + cross terms; the fixed z1 and conj(z2)
// summands keep both defects bounded away from zero.
MapField random_mixed_map(Rng& rng, int n, int r, int max_deg, const std::string& name) {
  MapField m;
  m.source_dim = n;
  m.target_dim = r;
  m.name = name;
  for (int alpha = 0; alpha < r; ++alpha) {
    Expr e = Expr::coord(1) + conj(Expr::coord(std::min(2, n)));
    e = e + random_poly(rng, n, max_deg, 2, false);
    e = e + random_poly(rng, n, max_deg, 2, true);
    e = e + random_monomial(rng, n, max_deg - 1, false, 0.5) * conj(Expr::coord(rng.uniform_int(1, n)));
    m.components.push_back(e);
  }
  return m;
}

double tensor_relative_error(const MixedTensor& got, const MixedTensor& want) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < got.a.size(); ++k) {
    diff = std::max(diff, std::abs(got.a[k] - want.a[k]));
    scale = std::max(scale, std::abs(want.a[k]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

// --- P1 -------------------------------------------------------------------

SuiteCheck check_hopf_golden(const SuiteParams& params) {
  SuiteCheck c;
  c.id = "P1";
  c.description = "Hopf Christoffel blocks match closed forms";
  c.tolerance = 1e-10;
  double worst = 0.0;
  for (int n : {2, 3}) {
    HermitianMetricField hopf = catalog_metric("hopf", n);
    auto pts = sample_points(n, params.samples, params.seed, params.box, hopf.exclusion_radius);
    for (const auto& p : pts) {
      ChristoffelTable t = christoffel(hopf, p);
      const double z2 = p.norm() * p.norm();
      double diff = 0.0, scale = 0.0;
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            // Γ^k_{i j̄} = (δ_ij z^k − δ_ik z^j)/(2|z|²)
            Complex mixed_cf = ((i == j ? p.z[k] : Complex{}) - (i == k ? p.z[j] : Complex{})) / (2.0 * z2);
            // Γ^{k̄}_{i j̄} = (δ_ij z̄^k − δ_jk z̄^i)/(2|z|²)
            Complex bar_cf = ((i == j ? std::conj(p.z[k]) : Complex{}) -
                              (j == k ? std::conj(p.z[i]) : Complex{})) /
                             (2.0 * z2);
            diff = std::max(diff, std::abs(t.gamma_mixed(k, i, j) - mixed_cf));
            diff = std::max(diff, std::abs(t.gamma_mixed_bar(k, i, j) - bar_cf));
            scale = std::max({scale, std::abs(mixed_cf), std::abs(bar_cf)});
          }
      worst = std::max(worst, diff / scale);
    }
  }
  c.residuals.emplace_back("max_relative_error", worst);
  c.pass = worst <= c.tolerance;
  return c;
}

// --- P2 / P3 ----------------------------------------------------------------

SuiteCheck check_kaehler_catalog(const SuiteParams& params) {
  SuiteCheck c;
  c.id = "P2";
  c.description = "flat and Fubini-Study classify as Kaehler, (1,2)-symplectic, cosymplectic";
  c.tolerance = params.tol;
  bool ok = true;
  double worst = 0.0;
  auto run = [&](const HermitianMetricField& m) {
    auto pts = sample_points(m.n, params.samples, params.seed, params.box, m.exclusion_radius);
    StructureReport rep = classify(m, pts, params.tol);
    ok = ok && rep.kaehler && rep.one_two_symplectic && rep.cosymplectic;
    worst = std::max({worst, rep.max_kaehler, rep.max_cosymplectic});
  };
  for (int n : {1, 2, 3}) run(catalog_metric("flat", n));
  for (int n : {1, 2}) run(catalog_metric("fubini_study", n));
  c.residuals.emplace_back("max_structural_residual", worst);
  c.pass = ok && worst < params.tol;
  return c;
}

SuiteCheck check_hopf_not_kaehler(const SuiteParams& params) {
  SuiteCheck c;
  c.id = "P3";
  c.description = "Hopf classifies as non-Kaehler, non-(1,2)-symplectic, non-cosymplectic";
  c.tolerance = params.tol;
  bool ok = true;
  double least = 1e300;
  double trace_err = 0.0;
  for (int n : {2, 3}) {
    HermitianMetricField hopf = catalog_metric("hopf", n);
    auto pts = sample_points(n, params.samples, params.seed, params.box, hopf.exclusion_radius);
    StructureReport rep = classify(hopf, pts, params.tol);
    ok = ok && !rep.kaehler && !rep.one_two_symplectic && !rep.cosymplectic;
    least = std::min({least, rep.max_one_two_symplectic, rep.max_kaehler, rep.max_cosymplectic});
    // T^α = (n−1) z^α / 2
    for (std::size_t s = 0; s < rep.samples.size(); ++s)
      for (int a = 0; a < n; ++a)
        trace_err = std::max(trace_err, std::abs(rep.per_sample[s].trace[static_cast<std::size_t>(a)] -
                                                 0.5 * (n - 1) * rep.samples[s].z[static_cast<std::size_t>(a)]));
  }
  c.residuals.emplace_back("min_structural_residual", least);
  c.residuals.emplace_back("trace_closed_form_error", trace_err);
  c.pass = ok && trace_err <= 1e-10;
  return c;
}

// --- P4 -------------------------------------------------------------------

SuiteCheck check_holomorphic_pluriharmonic(const SuiteParams& params) {
  SuiteCheck c;
  c.id = "P4";
  c.description = "holomorphic maps into Kaehler targets are pluriharmonic";
  c.tolerance = params.tol;
  Rng rng(params.seed ^ 0x9e3779b97f4a7c15ull);
  auto pts = sample_points(2, params.samples, params.seed, params.box, 0.0);
  HermitianMetricField flat2 = flat_metric(2);
  HermitianMetricField fs2 = catalog_metric("fubini_study", 2);
  double worst = 0.0;
  for (int t = 0; t < 16; ++t) {
    MapField phi = random_holomorphic_map(rng, 2, 2, 3, "holo" + std::to_string(t));
    const HermitianMetricField& target = (t % 2 == 0) ? flat2 : fs2;
    for (const auto& p : pts) worst = std::max(worst, pluriharmonic_residual(phi, target, p).max_abs());
  }
  c.residuals.emplace_back("max_ph_residual", worst);
  c.pass = worst < params.tol;
  return c;
}

// --- P5 -------------------------------------------------------------------

SuiteCheck check_hopf_coordinate_function(const SuiteParams& params) {
  SuiteCheck c;
  c.id = "P5";
  c.description = "coordinate function on Hopf is pluriharmonic but not (1,1)-geodesic";
  c.tolerance = 1e-10;
  HermitianMetricField hopf = catalog_metric("hopf", 2);
  HermitianMetricField flat1 = flat_metric(1);
  MapField phi{2, 1, {Expr::coord(1)}, "z1", "flat"};
  auto pts = sample_points(2, params.samples, params.seed, params.box, hopf.exclusion_radius);
  double rel = 0.0, least_max = 1e300, ph_max = 0.0;
  for (const auto& p : pts) {
    MixedTensor s = one_one_geodesic_residual(phi, hopf, flat1, p);
    ph_max = std::max(ph_max, pluriharmonic_residual(phi, flat1, p).max_abs());
    const double z2 = p.norm() * p.norm();
    MixedTensor cf(1, 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        cf.at(0, a, b) = -((a == b ? p.z[0] : Complex{}) - (a == 0 ? p.z[b] : Complex{})) / (2.0 * z2);
    rel = std::max(rel, tensor_relative_error(s, cf));
    least_max = std::min(least_max, s.max_abs());
  }
  c.residuals.emplace_back("closed_form_relative_error", rel);
  c.residuals.emplace_back("min_sample_residual", least_max);
  c.residuals.emplace_back("max_ph_residual", ph_max);
  c.pass = rel <= 1e-10 && least_max > 1e-2 && ph_max < params.tol;
  return c;
}

// --- P6 -------------------------------------------------------------------

SuiteCheck check_pullback(const SuiteParams& params) {
  SuiteCheck c;
  c.id = "P6";
  c.description = "morphisms pull back pluriharmonic maps to pluriharmonic maps";
  c.tolerance = params.tol;
  Rng rng(params.seed ^ 0xa5a5a5a5a5a5a5a5ull);
  auto pts = sample_points(2, params.samples, params.seed, params.box, 0.0);
  HermitianMetricField flat2 = flat_metric(2);
  HermitianMetricField flat1 = flat_metric(1);

  std::vector<MapField> morphisms;
  morphisms.push_back(MapField{2, 2, {pow(Expr::coord(1), 2), Expr::coord(1) * Expr::coord(2)}, "psi0", ""});
  morphisms.push_back(random_holomorphic_map(rng, 2, 2, 2, "psi1"));
  morphisms.push_back(random_antiholomorphic_map(rng, 2, 2, 2, "psi2"));

  std::vector<MapField> ph_maps;
  {
    std::vector<Complex> c1(4, Complex{}), c2(16, Complex{});
    c1[0] = 1.0;             // h = z1 + ...
    c1[3] = Complex(0, 2);   // + 2i conj(z2)
    c2[0 * 4 + 1] = 1.0;     // + z1 z2 terms
    c2[1 * 4 + 0] = 1.0;
    c2[2 * 4 + 3] = Complex(0.5, -1.0);
    c2[3 * 4 + 2] = Complex(0.5, -1.0);
    ph_maps.push_back(jet_test_function(c1, c2));
  }
  ph_maps.push_back(MapField{2, 1, {random_poly(rng, 2, 2, 3, false)}, "holo_fn", ""});
  ph_maps.push_back(MapField{2, 1, {random_poly(rng, 2, 2, 2, false) + random_poly(rng, 2, 2, 2, true)}, "ph_fn", ""});

  double worst = 0.0;
  bool ok = true;
  for (const auto& psi : morphisms)
    for (const auto& phi : ph_maps) {
      PullbackReport rep = pullback_check(psi, phi, flat2, flat1, pts, params.tol);
      worst = std::max(worst, rep.composed_ph_max);
      ok = ok && rep.pass;
    }
  c.residuals.emplace_back("max_composed_ph_residual", worst);
  c.pass = ok && worst < params.tol;
  return c;
}

// --- P7 -------------------------------------------------------------------

SuiteCheck check_chain_rule(const SuiteParams& params) {
  SuiteCheck c;
  c.id = "P7";
  c.description = "chain rule identity for the composed pluriharmonic residual";
  c.tolerance = 1e-9;
  Rng rng(params.seed ^ 0x5bd1e995cc9e2d51ull);
  double worst = 0.0;

  // Flat middle chart: random smooth maps, bilinear identity must hold exactly.
  HermitianMetricField flat2 = flat_metric(2);
  HermitianMetricField flat1 = flat_metric(1);
  auto pts2 = sample_points(2, 8, params.seed + 1, params.box, 0.0);
  for (int t = 0; t < 8; ++t) {
    MapField psi = random_mixed_map(rng, 2, 2, 2, "psi" + std::to_string(t));
    MapField phi{2, 1, {random_poly(rng, 2, 2, 2, false) + random_poly(rng, 2, 2, 2, true)}, "phi", ""};
    for (const auto& p : pts2) worst = std::max(worst, chain_rule_check(psi, phi, flat2, flat1, p).max_difference);
  }

  // Hopf middle chart: offset maps whose image stays outside the exclusion ball.
  HermitianMetricField hopf2 = catalog_metric("hopf", 2);
  HermitianMetricField fs1 = catalog_metric("fubini_study", 1);
  auto pts1 = sample_points(1, 24, params.seed + 2, 1.0, 0.0);
  for (int t = 0; t < 8; ++t) {
    Complex off1 = Complex(1.5, 0) + 0.2 * Complex(rng.u01(), rng.u01());
    Complex off2 = 0.2 * Complex(rng.u01(), rng.u01());
    Expr w = Expr::coord(1);
    MapField psi{1, 2,
                 {Expr::constant(off1) + Expr::constant(rng.coeff(0.1)) * w + Expr::constant(rng.coeff(0.1)) * pow(w, 2),
                  Expr::constant(off2) + Expr::constant(rng.coeff(0.1)) * w + Expr::constant(rng.coeff(0.1)) * conj(w)},
                 "psi_hopf", ""};
    MapField phi{2, 1, {random_poly(rng, 2, 2, 2, false) + random_poly(rng, 2, 2, 2, true)}, "phi", ""};
    const HermitianMetricField& metric_p = (t % 2 == 0) ? flat1 : fs1;
    int used = 0;
    for (const auto& p : pts1) {
      ChartPoint image;
      for (const auto& comp : psi.components) image.z.push_back(eval_value(comp, p));
      if (image.norm() < 0.35) continue;
      worst = std::max(worst, chain_rule_check(psi, phi, hopf2, metric_p, p).max_difference);
      if (++used >= 16) break;
    }
  }

  c.residuals.emplace_back("max_identity_gap", worst);
  c.pass = worst <= c.tolerance;
  return c;
}

// --- P8 -------------------------------------------------------------------

SuiteCheck check_kaehler_target_morphisms(const SuiteParams& params) {
  SuiteCheck c;
  c.id = "P8";
  c.description = "Kaehler-target morphism verdict equals the +/-holomorphy verdict";
  c.tolerance = params.tol;
  Rng rng(params.seed ^ 0xc2b2ae3d27d4eb4full);
  auto pts = sample_points(2, params.samples, params.seed, params.box, 0.0);
  HermitianMetricField flat2 = flat_metric(2);
  HermitianMetricField fs2 = catalog_metric("fubini_study", 2);
  int mismatches = 0;
  for (int t = 0; t < 24; ++t) {
    MapField psi = (t % 3 == 0)   ? random_holomorphic_map(rng, 2, 2, 3, "m" + std::to_string(t))
                   : (t % 3 == 1) ? random_antiholomorphic_map(rng, 2, 2, 3, "m" + std::to_string(t))
                                  : random_mixed_map(rng, 2, 2, 2, "m" + std::to_string(t));
    const HermitianMetricField& target = (t % 2 == 0) ? flat2 : fs2;
    MorphismVerdict v = is_pluriharmonic_morphism(psi, flat2, target, pts, params.tol);
    if (v.morphism != (v.holomorphic || v.antiholomorphic)) ++mismatches;
  }
  c.residuals.emplace_back("verdict_mismatches", static_cast<double>(mismatches));
  c.pass = mismatches == 0;
  return c;
}

// --- P9 -------------------------------------------------------------------

SuiteCheck check_harmonic_trace_identity(const SuiteParams& params) {
  SuiteCheck c;
  c.id = "P9";
  c.description = "harmonic residual matches its trace identity";
  c.tolerance = 1e-10;
  Rng rng(params.seed ^ 0x2545f4914f6cdd1dull);

  double identity_gap = 0.0;
  auto check_case = [&](const MapField& phi, const HermitianMetricField& src, const HermitianMetricField& tgt,
                        const std::vector<ChartPoint>& pts) {
    for (const auto& p : pts) {
      std::vector<Complex> tau = harmonic_residual(phi, src, tgt, p);
      MixedTensor r = pluriharmonic_residual(phi, tgt, p);
      ComplexMatrix q = inverse_metric(metric_at(src, p).g);
      std::vector<Complex> trace = cosymplectic_trace(src, p);
      MapJets jets = map_jets(phi, p);
      for (int alpha = 0; alpha < phi.target_dim; ++alpha) {
        Complex recon = 0.0;
        for (int i = 0; i < src.n; ++i)
          for (int j = 0; j < src.n; ++j) recon += q(i, j) * r.at(alpha, i, j);
        for (int k = 0; k < src.n; ++k) {
          recon -= trace[static_cast<std::size_t>(k)] * jets.comp[static_cast<std::size_t>(alpha)].d[static_cast<std::size_t>(k)];
          recon -= std::conj(trace[static_cast<std::size_t>(k)]) *
                   jets.comp[static_cast<std::size_t>(alpha)].d[static_cast<std::size_t>(src.n + k)];
        }
        identity_gap = std::max(identity_gap, std::abs(tau[static_cast<std::size_t>(alpha)] - recon));
      }
    }
  };

  HermitianMetricField hopf2 = catalog_metric("hopf", 2);
  HermitianMetricField flat1 = flat_metric(1);
  HermitianMetricField flat2 = flat_metric(2);
  HermitianMetricField fs2 = catalog_metric("fubini_study", 2);

  auto pts_hopf = sample_points(2, 16, params.seed, params.box, hopf2.exclusion_radius);
  auto pts_flat = sample_points(2, 16, params.seed, params.box, 0.0);
  check_case(MapField{2, 1, {random_poly(rng, 2, 2, 2, false) + random_poly(rng, 2, 2, 2, true)}, "f", ""},
             hopf2, flat1, pts_hopf);
  check_case(random_mixed_map(rng, 2, 2, 2, "g"), flat2, fs2, pts_flat);
  check_case(random_mixed_map(rng, 2, 2, 2, "h"), fs2, flat2, pts_flat);

  // Pluriharmonic maps from a flat (cosymplectic) source are harmonic.
  double flat_tau = 0.0;
  {
    std::vector<Complex> c1(4, Complex{}), c2(16, Complex{});
    c1[0] = Complex(0.7, -0.2);
    c1[2] = Complex(0.1, 0.4);
    c2[0 * 4 + 0] = 1.0;
    c2[2 * 4 + 2] = Complex(0, 1);
    MapField h = jet_test_function(c1, c2);
    for (const auto& p : pts_flat) {
      std::vector<Complex> tau = harmonic_residual(h, flat2, flat1, p);
      for (const auto& t : tau) flat_tau = std::max(flat_tau, std::abs(t));
    }
  }

  // On Hopf, φ = z1 is pluriharmonic but not harmonic: τ¹ = −(n−1) z¹/2.
  double hopf_tau_err = 0.0;
  for (int n : {2, 3}) {
    HermitianMetricField hopf = catalog_metric("hopf", n);
    MapField phi{n, 1, {Expr::coord(1)}, "z1", "flat"};
    auto pts = sample_points(n, 16, params.seed, params.box, hopf.exclusion_radius);
    for (const auto& p : pts) {
      std::vector<Complex> tau = harmonic_residual(phi, hopf, flat1, p);
      hopf_tau_err = std::max(hopf_tau_err, std::abs(tau[0] + 0.5 * (n - 1) * p.z[0]));
    }
  }

  c.residuals.emplace_back("max_identity_gap", identity_gap);
  c.residuals.emplace_back("max_flat_source_tau", flat_tau);
  c.residuals.emplace_back("hopf_tau_closed_form_error", hopf_tau_err);
  c.pass = identity_gap <= 1e-10 && flat_tau < params.tol && hopf_tau_err <= 1e-10;
  return c;
}

}  // namespace

PaperSuiteReport run_paper_suite(const SuiteParams& params) {
  PaperSuiteReport rep;
  rep.checks.push_back(check_hopf_golden(params));
  rep.checks.push_back(check_kaehler_catalog(params));
  rep.checks.push_back(check_hopf_not_kaehler(params));
  rep.checks.push_back(check_holomorphic_pluriharmonic(params));
  rep.checks.push_back(check_hopf_coordinate_function(params));
  rep.checks.push_back(check_pullback(params));
  rep.checks.push_back(check_chain_rule(params));
  rep.checks.push_back(check_kaehler_target_morphisms(params));
  rep.checks.push_back(check_harmonic_trace_identity(params));
  rep.overall = true;
  for (const auto& c : rep.checks) rep.overall = rep.overall && c.pass;
  return rep;
}

}  // namespace plurigeo
