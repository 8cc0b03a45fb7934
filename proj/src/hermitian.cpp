#include "plurigeo/hermitian.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "plurigeo/errors.hpp"

namespace plurigeo {

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr double kEigenFloor = 1e-10;
constexpr double kMaxCondition = 1e12;
constexpr double kInverseResidualTol = 1e-10;

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
  ComplexMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

void check_hermitian_values(const ComplexMatrix& g, const std::string& name, const ChartPoint& p) {
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j)
      if (std::abs(g(i, j) - std::conj(g(j, i))) > kSymmetryTol)
        throw MetricError("metric '" + name + "' violates Hermitian symmetry at " + p.to_string());
}

double smallest_eigenvalue(const ComplexMatrix& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(g), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

bool admissible(const HermitianMetricField& m, const ChartPoint& p) {
  return p.dim() == m.n && p.norm() >= m.exclusion_radius;
}

MetricJet metric_at(const HermitianMetricField& m, const ChartPoint& p) {
  if (p.dim() != m.n)
    throw MetricError("metric '" + m.name + "' has dimension " + std::to_string(m.n) +
                      " but point has dimension " + std::to_string(p.dim()));
  if (!admissible(m, p))
    throw MetricError("inadmissible point " + p.to_string() + " for metric '" + m.name +
                      "' (|z| < " + std::to_string(m.exclusion_radius) + ")");

  const int n = m.n;
  MetricJet out;
  out.g = ComplexMatrix(n, n);
  out.dg.assign(static_cast<std::size_t>(2 * n), ComplexMatrix(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      WirtingerJet jet = eval_jet(m.entry(i, j), p, 1);
      out.g(i, j) = jet.v;
      for (int a = 0; a < 2 * n; ++a) out.dg[a](i, j) = jet.d[a];
    }

  check_hermitian_values(out.g, m.name, p);
  // ∂_A g_{i j̄} = conj(∂_Ā g_{j ī})
  for (int a = 0; a < 2 * n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (std::abs(out.dg[a](i, j) - std::conj(out.dg[bar_flip(a, n)](j, i))) > kSymmetryTol)
          throw MetricError("metric '" + m.name + "' violates derivative conjugation symmetry at " + p.to_string());
  if (smallest_eigenvalue(out.g) <= kEigenFloor)
    throw MetricError("metric '" + m.name + "' is not positive definite at " + p.to_string());
  return out;
}

ComplexMatrix inverse_metric(const ComplexMatrix& g) {
  const int n = g.rows();
  if (n == 0 || g.cols() != n) throw MetricError("inverse_metric: matrix must be square");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(g(i, j) - std::conj(g(j, i))) > kSymmetryTol)
        throw MetricError("inverse_metric: matrix is not Hermitian");

  Eigen::MatrixXcd G = to_eigen(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= 0.0) throw MetricError("inverse_metric: matrix is not positive definite");
  if (hi / lo > kMaxCondition) throw MetricError("inverse_metric: ill-conditioned (cond > 1e12)");

  // Q(i,j) = g^{i j̄} with Σ_j g^{i j̄} g_{k j̄} = δ_{ik}, i.e. Q = (G^-1)^T.
  Eigen::MatrixXcd Q = G.inverse().transpose();
  double residual = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      Complex s = 0.0;
      for (int j = 0; j < n; ++j) s += Q(i, j) * G(k, j);
      if (i == k) s -= 1.0;
      residual = std::max(residual, std::abs(s));
    }
  if (residual > kInverseResidualTol)
    throw MetricError("inverse_metric: contraction residual " + std::to_string(residual) + " exceeds 1e-10");
  return from_eigen(Q);
}

namespace {

Expr sum_abs2(int n) {
  Expr s = abs2(Expr::coord(1));
  for (int k = 2; k <= n; ++k) s = s + abs2(Expr::coord(k));
  return s;
}

}  // namespace

HermitianMetricField catalog_metric(const std::string& name, int n) {
  if (n < 1) throw MetricError("catalog_metric: dimension must be >= 1");
  HermitianMetricField m;
  m.n = n;
  m.name = name;
  m.g.resize(static_cast<std::size_t>(n) * n);

  if (name == "flat") {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.g[static_cast<std::size_t>(i) * n + j] = Expr::number(i == j ? 1.0 : 0.0);
    m.exclusion_radius = 0.0;
    return m;
  }
  if (name == "hopf") {
    if (n < 2) throw MetricError("catalog_metric: hopf requires n >= 2");
    // g_{i j̄} = δ_ij / Σ_k |z^k|²
    Expr denom = sum_abs2(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m.g[static_cast<std::size_t>(i) * n + j] =
            (i == j) ? Expr::number(1.0) / denom : Expr::number(0.0);
    m.exclusion_radius = 0.3;
    return m;
  }
  if (name == "fubini_study") {
    // g_{i j̄} = δ_ij/(1+|z|²) − z̄^i z^j/(1+|z|²)²
    Expr s = Expr::number(1.0) + sum_abs2(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Expr cross = conj(Expr::coord(i + 1)) * Expr::coord(j + 1) / pow(s, 2);
        m.g[static_cast<std::size_t>(i) * n + j] =
            (i == j) ? Expr::number(1.0) / s - cross : -cross;
      }
    m.exclusion_radius = 0.0;
    return m;
  }
  throw MetricError("catalog_metric: unknown metric '" + name + "'");
}

HermitianMetricField conformal_metric(const Expr& factor, int n, double exclusion_radius) {
  if (n < 1) throw MetricError("conformal_metric: dimension must be >= 1");
  if (!factor) throw MetricError("conformal_metric: empty factor expression");
  if (factor.max_coord() > n)
    throw MetricError("conformal_metric: factor references z" + std::to_string(factor.max_coord()) +
                      " beyond dimension " + std::to_string(n));
  if (exclusion_radius < 0.0) throw MetricError("conformal_metric: exclusion radius must be >= 0");

  // Probe positivity on a fixed deterministic grid outside the exclusion radius.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  auto u01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  int probes = 0;
  while (probes < 16) {
    ChartPoint p;
    p.z.resize(static_cast<std::size_t>(n));
    for (auto& c : p.z) c = Complex(4.0 * u01() - 2.0, 4.0 * u01() - 2.0);
    if (p.norm() < exclusion_radius) continue;
    ++probes;
    Complex f = eval_value(factor, p);
    if (std::abs(f.imag()) > kSymmetryTol * std::max(1.0, std::abs(f.real())) || f.real() <= 0.0)
      throw MetricError("conformal_metric: factor not positive at probe point " + p.to_string());
  }

  HermitianMetricField m;
  m.n = n;
  m.name = "conformal";
  m.exclusion_radius = exclusion_radius;
  m.g.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.g[static_cast<std::size_t>(i) * n + j] = (i == j) ? factor : Expr::number(0.0);
  return m;
}

HermitianMetricField load_metric_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open metric file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid JSON in metric file " + path.string() + ": " + e.what());
  }
  try {
    HermitianMetricField m;
    m.name = doc.value("name", std::string("user"));
    m.n = doc.at("dimension").get<int>();
    if (m.n < 1) throw ConfigError("metric file " + path.string() + ": dimension must be >= 1");
    m.exclusion_radius = doc.value("exclusion_radius", 0.0);
    const auto& rows = doc.at("g");
    if (!rows.is_array() || static_cast<int>(rows.size()) != m.n)
      throw ConfigError("metric file " + path.string() + ": 'g' must be an n x n array");
    m.g.resize(static_cast<std::size_t>(m.n) * m.n);
    for (int i = 0; i < m.n; ++i) {
      const auto& row = rows.at(static_cast<std::size_t>(i));
      if (!row.is_array() || static_cast<int>(row.size()) != m.n)
        throw ConfigError("metric file " + path.string() + ": 'g' must be an n x n array");
      for (int j = 0; j < m.n; ++j)
        m.g[static_cast<std::size_t>(i) * m.n + j] =
            parse_expr(row.at(static_cast<std::size_t>(j)).get<std::string>(), m.n);
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("metric file " + path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ConfigError("metric file " + path.string() + ": " + e.what());
  }
}

}  // namespace plurigeo
