#include "plurigeo/connection.hpp"

#include <cmath>

#include "plurigeo/errors.hpp"

namespace plurigeo {

Complex ChristoffelTable::gamma(int c, int a, int b) const {
  const bool cb = is_barred(c, n), ab = is_barred(a, n), bb = is_barred(b, n);
  const int k = cb ? c - n : c;
  if (!cb) {
    if (!ab && !bb) return gamma_uu(k, a, b);
    if (!ab && bb) return gamma_mixed(k, a, b - n);
    if (ab && !bb) return gamma_mixed(k, b, a - n);
    return 0.0;  // Γ^k_{ī j̄}
  }
  if (ab && bb) return std::conj(gamma_uu(k, a - n, b - n));
  if (!ab && bb) return gamma_mixed_bar(k, a, b - n);
  if (ab && !bb) return gamma_mixed_bar(k, b, a - n);
  return 0.0;  // Γ^{k̄}_{ij}
}

namespace {

struct MetricData {
  MetricJet jet;
  ComplexMatrix ginv;
};

MetricData metric_data(const HermitianMetricField& m, const ChartPoint& p) {
  MetricData d;
  d.jet = metric_at(m, p);
  d.ginv = inverse_metric(d.jet.g);
  return d;
}

ChristoffelTable table_from(const MetricData& d, int n) {
  ChristoffelTable t(n);
  const auto& dg = d.jet.dg;
  const auto& q = d.ginv;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Complex s_uu = 0.0, s_mixed = 0.0, s_bar = 0.0;
        for (int l = 0; l < n; ++l) {
          // Γ^k_{ij}    = ½ g^{k l̄} (∂_i g_{j l̄} + ∂_j g_{i l̄})
          s_uu += q(k, l) * (dg[i](j, l) + dg[j](i, l));
          // Γ^k_{i j̄}   = ½ g^{k l̄} (∂_j̄ g_{i l̄} − ∂_l̄ g_{i j̄})
          s_mixed += q(k, l) * (dg[n + j](i, l) - dg[n + l](i, j));
          // Γ^{k̄}_{i j̄} = ½ g^{l k̄} (∂_i g_{l j̄} − ∂_l g_{i j̄})
          s_bar += q(l, k) * (dg[i](l, j) - dg[l](i, j));
        }
        t.uu[t.idx(k, i, j)] = 0.5 * s_uu;
        t.mixed[t.idx(k, i, j)] = 0.5 * s_mixed;
        t.mixed_bar[t.idx(k, i, j)] = 0.5 * s_bar;
      }
  return t;
}

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

ChristoffelTable christoffel(const HermitianMetricField& m, const ChartPoint& p) {
  return table_from(metric_data(m, p), m.n);
}

FundamentalFormResiduals fundamental_form_residuals(const HermitianMetricField& m, const ChartPoint& p) {
  const MetricJet jet = metric_at(m, p);
  const int n = m.n;
  FundamentalFormResiduals r;
  r.n = n;
  r.r12.assign(static_cast<std::size_t>(n) * n * n, Complex{});
  r.r21.assign(r.r12.size(), Complex{});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        r.r12[r.idx(a, b, c)] = jet.dg[n + b](a, c) - jet.dg[n + c](a, b);
        r.r21[r.idx(a, b, c)] = jet.dg[a](b, c) - jet.dg[b](a, c);
      }
  return r;
}

double FundamentalFormResiduals::max_abs_r12() const { return max_abs(r12); }
double FundamentalFormResiduals::max_abs_r21() const { return max_abs(r21); }

namespace {

std::vector<Complex> trace_from(const MetricData& d, const ChristoffelTable& t) {
  const int n = t.n;
  std::vector<Complex> trace(static_cast<std::size_t>(n), Complex{});
  for (int a = 0; a < n; ++a) {
    Complex s = 0.0;
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m) s += d.ginv(l, m) * t.gamma_mixed(a, l, m);
    trace[static_cast<std::size_t>(a)] = s;
  }
  return trace;
}

}  // namespace

std::vector<Complex> cosymplectic_trace(const HermitianMetricField& m, const ChartPoint& p) {
  MetricData d = metric_data(m, p);
  return trace_from(d, table_from(d, m.n));
}

StructureReport classify(const HermitianMetricField& m, const std::vector<ChartPoint>& samples, double tol) {
  if (tol <= 0.0) throw Error("classify: tolerance must be positive");
  StructureReport rep;
  rep.metric_name = m.name;
  rep.n = m.n;
  rep.tol = tol;
  for (const auto& p : samples) {
    if (!admissible(m, p)) continue;
    MetricData d = metric_data(m, p);
    ChristoffelTable t = table_from(d, m.n);

    StructureSample s;
    s.one_two_symplectic = max_abs(t.mixed_bar);
    s.kaehler = std::max(s.one_two_symplectic, max_abs(t.mixed));
    s.trace = trace_from(d, t);
    for (const auto& c : s.trace) s.cosymplectic = std::max(s.cosymplectic, std::abs(c));

    rep.max_one_two_symplectic = std::max(rep.max_one_two_symplectic, s.one_two_symplectic);
    rep.max_kaehler = std::max(rep.max_kaehler, s.kaehler);
    rep.max_cosymplectic = std::max(rep.max_cosymplectic, s.cosymplectic);
    rep.samples.push_back(p);
    rep.per_sample.push_back(std::move(s));
  }
  if (rep.samples.empty()) throw MetricError("classify: no admissible samples for metric '" + m.name + "'");
  rep.integrable = true;
  rep.one_two_symplectic = rep.max_one_two_symplectic < tol;
  rep.kaehler = rep.max_kaehler < tol;
  rep.cosymplectic = rep.max_cosymplectic < tol;
  return rep;
}

}  // namespace plurigeo
