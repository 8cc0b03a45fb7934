#include "plurigeo/maps.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "plurigeo/errors.hpp"

namespace plurigeo {

double MixedTensor::max_abs() const {
  double m = 0.0;
  for (const auto& c : a) m = std::max(m, std::abs(c));
  return m;
}

namespace {

void check_map(const MapField& phi) {
  if (phi.source_dim < 1 || phi.target_dim < 1) throw Error("map '" + phi.name + "' has empty chart");
  if (static_cast<int>(phi.components.size()) != phi.target_dim)
    throw Error("map '" + phi.name + "' component count does not match target dimension");
  for (const auto& c : phi.components) {
    if (!c) throw Error("map '" + phi.name + "' has an empty component");
    if (c.max_coord() > phi.source_dim)
      throw Error("map '" + phi.name + "' references z" + std::to_string(c.max_coord()) +
                  " beyond source dimension " + std::to_string(phi.source_dim));
  }
}

void check_image_admissible(const HermitianMetricField& target, const ChartPoint& image,
                            const std::string& map_name) {
  if (image.dim() != target.n)
    throw MetricError("map '" + map_name + "' target dimension does not match metric '" + target.name + "'");
  if (!admissible(target, image))
    throw MetricError("image point " + image.to_string() + " of map '" + map_name +
                      "' is inadmissible for target metric '" + target.name + "'");
}

MixedTensor ph_residual_from_jets(const MapJets& jets, const ChristoffelTable& target_table) {
  const int n = jets.n, r = jets.r;
  MixedTensor out(r, n);
  for (int alpha = 0; alpha < r; ++alpha)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Complex s = jets.comp[static_cast<std::size_t>(alpha)].dd_at(i, n + j);
        for (int J = 0; J < 2 * r; ++J)
          for (int L = 0; L < 2 * r; ++L) {
            Complex g = target_table.gamma(alpha, J, L);
            if (g != Complex{}) s += g * jets.d(J, i) * jets.d(L, n + j);
          }
        out.at(alpha, i, j) = s;
      }
  return out;
}

MixedTensor oog_residual_from(const MixedTensor& ph, const MapJets& jets, const ChristoffelTable& source_table) {
  const int n = jets.n, r = jets.r;
  MixedTensor out = ph;
  for (int alpha = 0; alpha < r; ++alpha)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Complex s = 0.0;
        for (int k = 0; k < n; ++k) {
          s += source_table.gamma_mixed(k, i, j) * jets.comp[static_cast<std::size_t>(alpha)].d[static_cast<std::size_t>(k)];
          s += source_table.gamma_mixed_bar(k, i, j) * jets.comp[static_cast<std::size_t>(alpha)].d[static_cast<std::size_t>(n + k)];
        }
        out.at(alpha, i, j) -= s;
      }
  return out;
}

std::vector<Complex> tau_from(const MixedTensor& oog, const ComplexMatrix& source_ginv) {
  const int n = oog.n, r = oog.r;
  std::vector<Complex> tau(static_cast<std::size_t>(r), Complex{});
  for (int alpha = 0; alpha < r; ++alpha) {
    Complex s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += source_ginv(i, j) * oog.at(alpha, i, j);
    tau[static_cast<std::size_t>(alpha)] = s;
  }
  return tau;
}

}  // namespace

MapJets map_jets(const MapField& phi, const ChartPoint& p) {
  check_map(phi);
  if (p.dim() != phi.source_dim)
    throw Error("map '" + phi.name + "' expects points of dimension " + std::to_string(phi.source_dim));
  MapJets jets;
  jets.n = phi.source_dim;
  jets.r = phi.target_dim;
  jets.comp.reserve(phi.components.size());
  jets.image.z.reserve(phi.components.size());
  for (const auto& c : phi.components) {
    jets.comp.push_back(eval_jet(c, p, 2));
    jets.image.z.push_back(jets.comp.back().v);
  }
  return jets;
}

HolomorphyDefects holomorphy_residual(const MapField& phi, const ChartPoint& p) {
  check_map(phi);
  if (p.dim() != phi.source_dim)
    throw Error("map '" + phi.name + "' expects points of dimension " + std::to_string(phi.source_dim));
  const int n = phi.source_dim, r = phi.target_dim;
  HolomorphyDefects out{ComplexMatrix(r, n), ComplexMatrix(r, n)};
  for (int alpha = 0; alpha < r; ++alpha) {
    WirtingerJet jet = eval_jet(phi.components[static_cast<std::size_t>(alpha)], p, 1);
    for (int j = 0; j < n; ++j) {
      out.dbar(alpha, j) = jet.d[static_cast<std::size_t>(n + j)];
      out.dpart(alpha, j) = jet.d[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

MixedTensor pluriharmonic_residual(const MapField& phi, const HermitianMetricField& target, const ChartPoint& p) {
  MapJets jets = map_jets(phi, p);
  check_image_admissible(target, jets.image, phi.name);
  return ph_residual_from_jets(jets, christoffel(target, jets.image));
}

MixedTensor one_one_geodesic_residual(const MapField& phi, const HermitianMetricField& source,
                                      const HermitianMetricField& target, const ChartPoint& p) {
  MapJets jets = map_jets(phi, p);
  check_image_admissible(target, jets.image, phi.name);
  MixedTensor ph = ph_residual_from_jets(jets, christoffel(target, jets.image));
  return oog_residual_from(ph, jets, christoffel(source, p));
}

std::vector<Complex> harmonic_residual(const MapField& phi, const HermitianMetricField& source,
                                       const HermitianMetricField& target, const ChartPoint& p) {
  MapJets jets = map_jets(phi, p);
  check_image_admissible(target, jets.image, phi.name);
  MixedTensor ph = ph_residual_from_jets(jets, christoffel(target, jets.image));
  MixedTensor oog = oog_residual_from(ph, jets, christoffel(source, p));
  return tau_from(oog, inverse_metric(metric_at(source, p).g));
}

MapField compose(const MapField& outer, const MapField& inner) {
  check_map(outer);
  check_map(inner);
  if (outer.source_dim != inner.target_dim)
    throw Error("compose: '" + outer.name + "' expects dimension " + std::to_string(outer.source_dim) +
                " but '" + inner.name + "' maps into dimension " + std::to_string(inner.target_dim));
  MapField out;
  out.source_dim = inner.source_dim;
  out.target_dim = outer.target_dim;
  out.name = outer.name + "." + inner.name;
  out.components.reserve(outer.components.size());
  for (const auto& c : outer.components) out.components.push_back(c.substitute(inner.components));
  return out;
}

MapField load_map_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open map file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid JSON in map file " + path.string() + ": " + e.what());
  }
  try {
    MapField m;
    m.name = doc.value("name", std::string("user_map"));
    m.source_dim = doc.at("source_dimension").get<int>();
    m.target_dim = doc.at("target_dimension").get<int>();
    if (m.source_dim < 1 || m.target_dim < 1)
      throw ConfigError("map file " + path.string() + ": dimensions must be >= 1");
    const auto& comps = doc.at("components");
    if (!comps.is_array() || static_cast<int>(comps.size()) != m.target_dim)
      throw ConfigError("map file " + path.string() + ": 'components' must list r expressions");
    for (const auto& c : comps) m.components.push_back(parse_expr(c.get<std::string>(), m.source_dim));
    if (doc.contains("target_metric")) {
      m.target_metric_ref = doc.at("target_metric").get<std::string>();
      // Paths are kept relative to the map file's directory.
      if (m.target_metric_ref != "flat" && m.target_metric_ref != "hopf" &&
          m.target_metric_ref != "fubini_study" && !m.target_metric_ref.empty()) {
        std::filesystem::path ref(m.target_metric_ref);
        if (ref.is_relative()) m.target_metric_ref = (path.parent_path() / ref).string();
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("map file " + path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ConfigError("map file " + path.string() + ": " + e.what());
  }
}

ResidualReport evaluate_map_report(const MapField& phi, const HermitianMetricField& source,
                                   const HermitianMetricField& target,
                                   const std::vector<ChartPoint>& samples, double tol) {
  if (tol <= 0.0) throw Error("evaluate_map_report: tolerance must be positive");
  check_map(phi);
  ResidualReport rep;
  rep.map_name = phi.name;
  rep.tol = tol;
  for (const auto& p : samples) {
    if (!admissible(source, p)) continue;
    MapJets jets = map_jets(phi, p);
    check_image_admissible(target, jets.image, phi.name);

    MapSample s;
    const int n = jets.n, r = jets.r;
    for (int alpha = 0; alpha < r; ++alpha)
      for (int j = 0; j < n; ++j) {
        s.dbar_defect = std::max(s.dbar_defect, std::abs(jets.comp[static_cast<std::size_t>(alpha)].d[static_cast<std::size_t>(n + j)]));
        s.d_defect = std::max(s.d_defect, std::abs(jets.comp[static_cast<std::size_t>(alpha)].d[static_cast<std::size_t>(j)]));
      }
    MixedTensor ph = ph_residual_from_jets(jets, christoffel(target, jets.image));
    MixedTensor oog = oog_residual_from(ph, jets, christoffel(source, p));
    std::vector<Complex> tau = tau_from(oog, inverse_metric(metric_at(source, p).g));
    s.pluriharmonic = ph.max_abs();
    s.one_one_geodesic = oog.max_abs();
    for (const auto& t : tau) s.harmonic = std::max(s.harmonic, std::abs(t));

    rep.max_dbar_defect = std::max(rep.max_dbar_defect, s.dbar_defect);
    rep.max_d_defect = std::max(rep.max_d_defect, s.d_defect);
    rep.max_pluriharmonic = std::max(rep.max_pluriharmonic, s.pluriharmonic);
    rep.max_one_one_geodesic = std::max(rep.max_one_one_geodesic, s.one_one_geodesic);
    rep.max_harmonic = std::max(rep.max_harmonic, s.harmonic);
    rep.samples.push_back(p);
    rep.per_sample.push_back(s);
  }
  if (rep.samples.empty())
    throw MetricError("evaluate_map_report: no admissible samples for map '" + phi.name + "'");
  rep.holomorphic = rep.max_dbar_defect < tol;
  rep.antiholomorphic = rep.max_d_defect < tol;
  rep.pluriharmonic = rep.max_pluriharmonic < tol;
  rep.one_one_geodesic = rep.max_one_one_geodesic < tol;
  rep.harmonic = rep.max_harmonic < tol;
  return rep;
}

}  // namespace plurigeo
