#include <doctest.h>

#include "plurigeo/errors.hpp"
#include "plurigeo/morphism.hpp"
#include "plurigeo/sampling.hpp"
#include "testutil.hpp"

using namespace plurigeo;
using testutil::pt;

namespace {

MapField mk(std::vector<Expr> comps, int n, const std::string& name) {
  return MapField{n, static_cast<int>(comps.size()), std::move(comps), name, ""};
}

}  // namespace

TEST_CASE("morphism verdicts") {
  const double tol = 1e-9;
  HermitianMetricField flat2 = flat_metric(2);
  auto pts = sample_points(2, 16, 42, 2.0, 0.0);

  SUBCASE("holomorphic polynomials into flat targets are morphisms") {
    MapField psi = mk({pow(Expr::coord(1), 2), Expr::coord(1) * Expr::coord(2)}, 2, "psi");
    MorphismVerdict v = is_pluriharmonic_morphism(psi, flat2, flat2, pts, tol);
    CHECK(v.holomorphic);
    CHECK(v.pluriharmonic);
    CHECK(v.morphism);
  }
  SUBCASE("mixed maps are not morphisms") {
    MapField psi = mk({Expr::coord(1), conj(Expr::coord(2))}, 2, "psi");
    MorphismVerdict v = is_pluriharmonic_morphism(psi, flat2, flat2, pts, tol);
    CHECK_FALSE(v.holomorphic);
    CHECK_FALSE(v.antiholomorphic);
    CHECK(v.pluriharmonic);
    CHECK_FALSE(v.morphism);
  }
  SUBCASE("identity into the Hopf chart is holomorphic but not pluriharmonic") {
    HermitianMetricField hopf = catalog_metric("hopf", 2);
    MapField psi = mk({Expr::coord(1), Expr::coord(2)}, 2, "id");
    auto hopf_pts = sample_points(2, 16, 42, 2.0, hopf.exclusion_radius);
    MorphismVerdict v = is_pluriharmonic_morphism(psi, hopf, hopf, hopf_pts, tol);
    CHECK(v.holomorphic);
    CHECK_FALSE(v.pluriharmonic);
    CHECK_FALSE(v.morphism);
    CHECK(v.ph_residual_max > 1e-2);
  }
  SUBCASE("no admissible samples is an error") {
    HermitianMetricField hopf = catalog_metric("hopf", 2);
    std::vector<ChartPoint> inside = {pt({Complex(0.01, 0), 0.0})};
    MapField psi = mk({Expr::coord(1), Expr::coord(2)}, 2, "id");
    CHECK_THROWS_AS(is_pluriharmonic_morphism(psi, hopf, hopf, inside, tol), MetricError);
  }
}

TEST_CASE("chain rule: identity inner map reproduces the outer residual") {
  HermitianMetricField hopf = catalog_metric("hopf", 2);
  HermitianMetricField flat1 = flat_metric(1);
  MapField psi = mk({Expr::coord(1), Expr::coord(2)}, 2, "id");
  MapField phi = mk({Expr::coord(1) * conj(Expr::coord(2)) + pow(Expr::coord(1), 2)}, 2, "phi");
  testutil::Rng rng(19);
  for (int t = 0; t < 6; ++t) {
    ChartPoint p = rng.point(2, 2.0, 0.4);
    ChainRuleResult res = chain_rule_check(psi, phi, hopf, flat1, p);
    CHECK(res.max_difference <= 1e-12);
    MixedTensor direct = pluriharmonic_residual(phi, flat1, p);
    for (std::size_t k = 0; k < direct.a.size(); ++k)
      CHECK(testutil::close(res.lhs.a[k], direct.a[k], 1e-12));
  }
}

TEST_CASE("chain rule: Hopf middle chart") {
  HermitianMetricField hopf = catalog_metric("hopf", 2);
  HermitianMetricField flat1 = flat_metric(1);
  // ψ(w) = (1+w, w²), φ = z1; the image stays admissible when
  // |1+w|² + |w|⁴ > 0.09.
  MapField psi = mk({Expr::number(1.0) + Expr::coord(1), pow(Expr::coord(1), 2)}, 1, "psi");
  MapField phi = mk({Expr::coord(1)}, 2, "z1");
  testutil::Rng rng(23);
  int checked = 0;
  while (checked < 16) {
    ChartPoint w = rng.point(1);
    double img = std::norm(Complex(1, 0) + w.z[0]) + std::pow(std::abs(w.z[0]), 4);
    if (img <= 0.09) continue;
    ChainRuleResult res = chain_rule_check(psi, phi, hopf, flat1, w);
    CHECK(res.max_difference <= 1e-9);
    // φ∘ψ = 1 + w is holomorphic into flat ℂ, so the lhs vanishes.
    CHECK(res.lhs.max_abs() <= 1e-12);
    ++checked;
  }
}

TEST_CASE("chain rule: random polynomial pairs over flat metrics") {
  HermitianMetricField flat2 = flat_metric(2);
  HermitianMetricField flat1 = flat_metric(1);
  testutil::Rng rng(29);
  for (int t = 0; t < 8; ++t) {
    MapField psi = testutil::random_mixed_map(rng, 2, 2, 2, "psi");
    MapField phi = mk({testutil::random_mixed_expr(rng, 2, 2)}, 2, "phi");
    ChartPoint p = rng.point(2);
    CHECK(chain_rule_check(psi, phi, flat2, flat1, p).max_difference <= 1e-10);
  }
}

TEST_CASE("chain rule: curved target metric") {
  HermitianMetricField hopf = catalog_metric("hopf", 2);
  HermitianMetricField fs1 = catalog_metric("fubini_study", 1);
  MapField psi = mk({Expr::number(1.5) + Expr::number(0.2) * Expr::coord(1),
                     Expr::number(0.1) * conj(Expr::coord(1))},
                    1, "psi");
  MapField phi = mk({Expr::coord(1) * Expr::coord(2) + conj(Expr::coord(1))}, 2, "phi");
  testutil::Rng rng(31);
  for (int t = 0; t < 8; ++t) {
    ChartPoint w = rng.point(1, 1.0);
    CHECK(chain_rule_check(psi, phi, hopf, fs1, w).max_difference <= 1e-10);
  }
}

TEST_CASE("chain rule rejects dimension mismatches") {
  MapField psi = mk({Expr::coord(1)}, 1, "psi");
  MapField phi = mk({Expr::coord(1) + Expr::coord(2)}, 2, "phi");
  CHECK_THROWS_AS(chain_rule_check(psi, phi, flat_metric(2), flat_metric(1), pt({1.0})), Error);
}

TEST_CASE("jet test functions") {
  SUBCASE("C_1 = 1 gives h = z1") {
    std::vector<Complex> c1(4, Complex{});
    c1[0] = 1.0;
    MapField h = jet_test_function(c1, std::vector<Complex>(16, Complex{}));
    CHECK(h.source_dim == 2);
    WirtingerJet j = eval_jet(h.components[0], pt({Complex(0.3, 1), Complex(-2, 0.5)}), 1);
    CHECK(j.d[0] == Complex(1, 0));
    CHECK(j.d[1] == Complex(0, 0));
    CHECK(j.d[2] == Complex(0, 0));
  }
  SUBCASE("C_11 = 2 gives h = z1^2 up to the 1/2 weight") {
    std::vector<Complex> c1(4, Complex{}), c2(16, Complex{});
    c2[0] = 2.0;  // C_{11}
    MapField h = jet_test_function(c1, c2);
    WirtingerJet j = eval_jet(h.components[0], pt({0.0, 0.0}), 2);
    CHECK(j.dd_at(0, 0) == Complex(2, 0));
    CHECK(pluriharmonic_residual(h, flat_metric(1), pt({Complex(1, 2), 0.0})).max_abs() == 0.0);
  }
  SUBCASE("antiholomorphic jets") {
    std::vector<Complex> c1(4, Complex{}), c2(16, Complex{});
    c1[2] = 1.0;       // C_{1̄}
    c2[2 * 4 + 2] = 1.0;  // C_{1̄1̄}
    MapField h = jet_test_function(c1, c2);
    WirtingerJet j = eval_jet(h.components[0], pt({0.0, 0.0}), 2);
    CHECK(j.d[2] == Complex(1, 0));
    CHECK(j.dd_at(2, 2) == Complex(1, 0));
    CHECK(pluriharmonic_residual(h, flat_metric(1), pt({Complex(-1, 1), 1.0})).max_abs() == 0.0);
  }
  SUBCASE("mixed-type prescriptions are rejected") {
    std::vector<Complex> c1(4, Complex{}), c2(16, Complex{});
    c2[0 * 4 + 2] = 1.0;
    c2[2 * 4 + 0] = 1.0;
    CHECK_THROWS_AS(jet_test_function(c1, c2), Error);
  }
  SUBCASE("asymmetric prescriptions are rejected") {
    std::vector<Complex> c1(4, Complex{}), c2(16, Complex{});
    c2[0 * 4 + 1] = 1.0;
    CHECK_THROWS_AS(jet_test_function(c1, c2), Error);
  }
  SUBCASE("random same-type jets are matched at the origin and pluriharmonic") {
    testutil::Rng rng(37);
    for (int t = 0; t < 6; ++t) {
      const int n = 2, dirs = 4;
      std::vector<Complex> c1(dirs), c2(static_cast<std::size_t>(dirs) * dirs, Complex{});
      for (auto& c : c1) c = rng.coeff();
      for (int a = 0; a < dirs; ++a)
        for (int b = a; b < dirs; ++b) {
          if (is_barred(a, n) != is_barred(b, n)) continue;
          Complex c = rng.coeff();
          c2[static_cast<std::size_t>(a) * dirs + b] = c;
          c2[static_cast<std::size_t>(b) * dirs + a] = c;
        }
      MapField h = jet_test_function(c1, c2);
      WirtingerJet j = eval_jet(h.components[0], pt({0.0, 0.0}), 2);
      for (int a = 0; a < dirs; ++a) {
        CHECK(testutil::close(j.d[a], c1[static_cast<std::size_t>(a)], 1e-14));
        for (int b = 0; b < dirs; ++b)
          CHECK(testutil::close(j.dd_at(a, b), c2[static_cast<std::size_t>(a) * dirs + b], 1e-14));
      }
      ChartPoint p = rng.point(2);
      CHECK(pluriharmonic_residual(h, flat_metric(1), p).max_abs() <= 1e-12);
    }
  }
}

TEST_CASE("pullback of pluriharmonic maps along morphisms") {
  const double tol = 1e-9;
  HermitianMetricField flat2 = flat_metric(2);
  HermitianMetricField flat1 = flat_metric(1);
  auto pts = sample_points(2, 16, 42, 2.0, 0.0);

  SUBCASE("holomorphic psi with a jet test function") {
    MapField psi = mk({pow(Expr::coord(1), 2), Expr::coord(1) * Expr::coord(2)}, 2, "psi");
    std::vector<Complex> c1(4, Complex{}), c2(16, Complex{});
    c1[0] = Complex(1, -1);
    c1[3] = 0.5;
    MapField phi = jet_test_function(c1, c2);
    PullbackReport rep = pullback_check(psi, phi, flat2, flat1, pts, tol);
    CHECK(rep.pass);
    CHECK(rep.composed_ph_max < tol);
  }
  SUBCASE("randomized morphism/pluriharmonic pairs") {
    testutil::Rng rng(41);
    for (int t = 0; t < 8; ++t) {
      MapField psi = (t % 2 == 0) ? testutil::random_holomorphic_map(rng, 2, 2, 2, "psi")
                                  : testutil::random_antiholomorphic_map(rng, 2, 2, 2, "psi");
      MapField phi = mk({testutil::random_poly(rng, 2, 2, 2, false) + testutil::random_poly(rng, 2, 2, 2, true)},
                        2, "phi");
      PullbackReport rep = pullback_check(psi, phi, flat2, flat1, pts, tol);
      CHECK(rep.pass);
      CHECK(rep.composed_ph_max < 1e-10);
    }
  }
  SUBCASE("non-morphism psi is rejected") {
    MapField psi = mk({Expr::coord(1), conj(Expr::coord(2))}, 2, "psi");
    MapField phi = mk({Expr::coord(1)}, 2, "phi");
    CHECK_THROWS_AS(pullback_check(psi, phi, flat2, flat1, pts, tol), Error);
  }
}

TEST_CASE("Kaehler-target corollary: morphism verdict equals +/-holomorphy") {
  const double tol = 1e-9;
  HermitianMetricField flat2 = flat_metric(2);
  HermitianMetricField fs2 = catalog_metric("fubini_study", 2);
  auto pts = sample_points(2, 16, 42, 2.0, 0.0);
  testutil::Rng rng(43);
  for (int t = 0; t < 12; ++t) {
    MapField psi = (t % 3 == 0)   ? testutil::random_holomorphic_map(rng, 2, 2, 3, "m")
                   : (t % 3 == 1) ? testutil::random_antiholomorphic_map(rng, 2, 2, 3, "m")
                                  : testutil::random_mixed_map(rng, 2, 2, 2, "m");
    for (const auto* target : {&flat2, &fs2}) {
      MorphismVerdict v = is_pluriharmonic_morphism(psi, flat2, *target, pts, tol);
      CHECK(v.morphism == (v.holomorphic || v.antiholomorphic));
    }
  }
}

TEST_CASE("verdicts are invariant under positive scaling of the source metric") {
  const double tol = 1e-9;
  HermitianMetricField flat2 = flat_metric(2);
  HermitianMetricField scaled = conformal_metric(Expr::number(3.5), 2, 0.0);
  HermitianMetricField fs2 = catalog_metric("fubini_study", 2);
  auto pts = sample_points(2, 16, 42, 2.0, 0.0);
  testutil::Rng rng(47);
  for (int t = 0; t < 6; ++t) {
    MapField psi = (t % 2 == 0) ? testutil::random_holomorphic_map(rng, 2, 2, 2, "m")
                                : testutil::random_mixed_map(rng, 2, 2, 2, "m");
    MorphismVerdict a = is_pluriharmonic_morphism(psi, flat2, fs2, pts, tol);
    MorphismVerdict b = is_pluriharmonic_morphism(psi, scaled, fs2, pts, tol);
    CHECK(a.holomorphic == b.holomorphic);
    CHECK(a.antiholomorphic == b.antiholomorphic);
    CHECK(a.pluriharmonic == b.pluriharmonic);
    CHECK(a.morphism == b.morphism);
  }
}
