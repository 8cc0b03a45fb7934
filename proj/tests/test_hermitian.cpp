#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "plurigeo/errors.hpp"
#include "plurigeo/hermitian.hpp"
#include "plurigeo/sampling.hpp"
#include "testutil.hpp"

using namespace plurigeo;
using testutil::pt;

TEST_CASE("flat metric is the identity with zero derivatives") {
  HermitianMetricField flat = catalog_metric("flat", 3);
  MetricJet mj = metric_at(flat, pt({Complex(1, 2), Complex(-0.5, 0), Complex(0, 3)}));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(mj.g(i, j) == Complex(i == j ? 1.0 : 0.0, 0.0));
      for (int a = 0; a < 6; ++a) CHECK(mj.dg[a](i, j) == Complex(0, 0));
    }
}

TEST_CASE("Hopf metric values and derivatives at golden points") {
  HermitianMetricField hopf = catalog_metric("hopf", 2);
  SUBCASE("at (1,0): G = I and d_1 g_11 = -1") {
    MetricJet mj = metric_at(hopf, pt({1.0, 0.0}));
    CHECK(testutil::close(mj.g(0, 0), 1.0, 1e-15));
    CHECK(testutil::close(mj.g(1, 1), 1.0, 1e-15));
    CHECK(testutil::close(mj.g(0, 1), 0.0, 1e-15));
    // ∂_1 g_{11̄} = −z̄¹/|z|⁴ = −1
    CHECK(testutil::close(mj.dg[0](0, 0), Complex(-1, 0), 1e-15));
  }
  SUBCASE("at (1,1): G = I/2") {
    MetricJet mj = metric_at(hopf, pt({1.0, 1.0}));
    CHECK(testutil::close(mj.g(0, 0), 0.5, 1e-15));
    CHECK(testutil::close(mj.g(1, 1), 0.5, 1e-15));
  }
  SUBCASE("exclusion radius rejects points near the origin") {
    CHECK_THROWS_AS(metric_at(hopf, pt({Complex(0.1, 0), 0.0})), MetricError);
    CHECK_FALSE(admissible(hopf, pt({Complex(0.1, 0), 0.0})));
  }
}

TEST_CASE("catalog errors") {
  CHECK_THROWS_AS(catalog_metric("hopf", 1), MetricError);
  CHECK_THROWS_AS(catalog_metric("euclidean", 2), MetricError);
}

TEST_CASE("inverse_metric honors the contraction convention") {
  SUBCASE("diag(2,1) -> diag(0.5,1)") {
    ComplexMatrix g(2, 2);
    g(0, 0) = 2.0;
    g(1, 1) = 1.0;
    ComplexMatrix q = inverse_metric(g);
    CHECK(testutil::close(q(0, 0), 0.5, 1e-15));
    CHECK(testutil::close(q(1, 1), 1.0, 1e-15));
    CHECK(testutil::close(q(0, 1), 0.0, 1e-15));
  }
  SUBCASE("identity -> identity") {
    ComplexMatrix q = inverse_metric(ComplexMatrix::identity(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(testutil::close(q(i, j), i == j ? 1.0 : 0.0, 1e-15));
  }
  SUBCASE("Hopf value at |z|^2 = 4 -> 4 I") {
    HermitianMetricField hopf = catalog_metric("hopf", 2);
    MetricJet mj = metric_at(hopf, pt({2.0, 0.0}));
    ComplexMatrix q = inverse_metric(mj.g);
    CHECK(testutil::close(q(0, 0), 4.0, 1e-12));
    CHECK(testutil::close(q(1, 1), 4.0, 1e-12));
  }
  SUBCASE("complex Hermitian matrix: sum_j q(i,j) g(k,j) = delta_ik") {
    ComplexMatrix g(2, 2);
    g(0, 0) = 2.0;
    g(0, 1) = Complex(0, 1);
    g(1, 0) = Complex(0, -1);
    g(1, 1) = 2.0;
    ComplexMatrix q = inverse_metric(g);
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) {
        Complex s = 0.0;
        for (int j = 0; j < 2; ++j) s += q(i, j) * g(k, j);
        CHECK(testutil::close(s, i == k ? 1.0 : 0.0, 1e-12));
      }
  }
  SUBCASE("ill-conditioned matrices are rejected") {
    ComplexMatrix g(2, 2);
    g(0, 0) = 1.0;
    g(1, 1) = 1e-13;
    CHECK_THROWS_AS(inverse_metric(g), MetricError);
  }
  SUBCASE("non-Hermitian input is rejected") {
    ComplexMatrix g(2, 2);
    g(0, 0) = 1.0;
    g(0, 1) = Complex(0, 1);
    g(1, 0) = Complex(0, 1);
    g(1, 1) = 1.0;
    CHECK_THROWS_AS(inverse_metric(g), MetricError);
  }
}

TEST_CASE("catalog metrics are Hermitian positive definite on random samples") {
  for (const char* name : {"flat", "hopf", "fubini_study"}) {
    for (int n : {2, 3}) {
      HermitianMetricField m = catalog_metric(name, n);
      auto pts = sample_points(n, 32, 42, 2.0, m.exclusion_radius);
      for (const auto& p : pts) {
        MetricJet mj = metric_at(m, p);  // throws if symmetry or PD fails
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) CHECK(testutil::close(mj.g(i, j), std::conj(mj.g(j, i)), 1e-10));
      }
    }
  }
}

TEST_CASE("Hopf scaling: G(lambda z) = G(z)/lambda^2") {
  HermitianMetricField hopf = catalog_metric("hopf", 2);
  testutil::Rng rng(3);
  for (double lambda : {0.5, 2.0, 3.0}) {
    for (int t = 0; t < 8; ++t) {
      ChartPoint p = rng.point(2, 2.0, 0.5);
      ChartPoint q{{lambda * p.z[0], lambda * p.z[1]}};
      MetricJet a = metric_at(hopf, p);
      MetricJet b = metric_at(hopf, q);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          CHECK(testutil::rel_close(b.g(i, j), a.g(i, j) / (lambda * lambda), 1e-12));
    }
  }
}

TEST_CASE("Fubini-Study n=1 equals 1/(1+|z|^2)^2") {
  HermitianMetricField fs = catalog_metric("fubini_study", 1);
  CHECK(metric_at(fs, pt({0.0})).g(0, 0) == Complex(1, 0));
  testutil::Rng rng(4);
  for (int t = 0; t < 16; ++t) {
    ChartPoint p = rng.point(1);
    double expected = 1.0 / std::pow(1.0 + std::norm(p.z[0]), 2);
    CHECK(testutil::rel_close(metric_at(fs, p).g(0, 0), expected, 1e-12));
  }
}

TEST_CASE("conformal metrics") {
  CHECK_NOTHROW(conformal_metric(parse_expr("1+abs2(z1)", 2), 2, 0.0));
  CHECK_THROWS_AS(conformal_metric(parse_expr("z1", 2), 2, 0.0), MetricError);
  CHECK_THROWS_AS(conformal_metric(parse_expr("0-1-abs2(z1)", 2), 2, 0.0), MetricError);

  HermitianMetricField m = conformal_metric(parse_expr("2", 2), 2, 0.0);
  MetricJet mj = metric_at(m, pt({1.0, Complex(0, 1)}));
  CHECK(mj.g(0, 0) == Complex(2, 0));
  CHECK(mj.g(0, 1) == Complex(0, 0));
}

TEST_CASE("bad user metrics are rejected at evaluation") {
  SUBCASE("non-Hermitian values") {
    HermitianMetricField m{1, {parse_expr("z1", 1)}, 0.0, "bad"};
    CHECK_THROWS_AS(metric_at(m, pt({Complex(1, 1)})), MetricError);
  }
  SUBCASE("not positive definite") {
    HermitianMetricField m{1, {parse_expr("0-1", 1)}, 0.0, "negative"};
    CHECK_THROWS_AS(metric_at(m, pt({1.0})), MetricError);
  }
  SUBCASE("Hermitian values but asymmetric derivatives") {
    // g_{12̄} and g_{21̄} agree at real points but are not conjugate fields.
    HermitianMetricField m{2,
                           {parse_expr("1", 2), parse_expr("0.1*z1", 2), parse_expr("0.1*z1", 2), parse_expr("1", 2)},
                           0.0,
                           "asym"};
    CHECK_THROWS_AS(metric_at(m, pt({Complex(0.5, 0), Complex(0.25, 0)})), MetricError);
  }
}

TEST_CASE("metric file round trip") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "plurigeo_test_metric";
  fs::create_directories(dir);
  fs::path file = dir / "metric.json";
  {
    std::ofstream out(file);
    out << R"json({"name":"user_hopf","dimension":2,"exclusion_radius":0.3,
               "g":[["1/(abs2(z1)+abs2(z2))","0"],["0","1/(abs2(z1)+abs2(z2))"]]})json";
  }
  HermitianMetricField m = load_metric_file(file);
  CHECK(m.n == 2);
  CHECK(m.name == "user_hopf");
  CHECK(m.exclusion_radius == 0.3);
  MetricJet mj = metric_at(m, pt({1.0, 0.0}));
  CHECK(testutil::close(mj.g(0, 0), 1.0, 1e-15));

  CHECK_THROWS_AS(load_metric_file(dir / "missing.json"), ConfigError);
  {
    std::ofstream out(file);
    out << R"json({"dimension":2,"g":[["z3","0"],["0","1"]]})json";
  }
  CHECK_THROWS_AS(load_metric_file(file), ConfigError);
  fs::remove_all(dir);
}
