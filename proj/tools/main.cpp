#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "plurigeo/connection.hpp"
#include "plurigeo/errors.hpp"
#include "plurigeo/hermitian.hpp"
#include "plurigeo/maps.hpp"
#include "plurigeo/morphism.hpp"
#include "plurigeo/papersuite.hpp"
#include "plurigeo/report.hpp"
#include "plurigeo/sampling.hpp"

namespace {

using namespace plurigeo;

struct CommonOpts {
  int samples = 32;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  double fd_step = 1e-5;
  double box = 2.0;
  std::string format = "text";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--samples", o.samples, "number of sample points");
  cmd->add_option("--seed", o.seed, "sampler seed");
  cmd->add_option("--tol", o.tol, "verdict tolerance");
  cmd->add_option("--fd-step", o.fd_step, "finite-difference step (echoed in reports)");
  cmd->add_option("--box", o.box, "sampling box half-width");
  cmd->add_option("--format", o.format, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", o.out, "also write the report to this file");
}

void validate_common(const CommonOpts& o) {
  if (o.samples < 1) throw ConfigError("--samples must be >= 1");
  if (o.tol <= 0.0) throw ConfigError("--tol must be positive");
  if (o.box <= 0.0) throw ConfigError("--box must be positive");
}

ReportConfig base_config(const std::string& command, const CommonOpts& o) {
  ReportConfig cfg;
  cfg.command = command;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.tol = o.tol;
  cfg.fd_step = o.fd_step;
  cfg.box = o.box;
  cfg.format = o.format;
  return cfg;
}

bool is_catalog_name(const std::string& s) {
  return s == "flat" || s == "hopf" || s == "fubini_study";
}

HermitianMetricField resolve_metric(const std::string& spec, int dim, const char* what) {
  if (is_catalog_name(spec)) {
    if (dim < 1)
      throw ConfigError(std::string(what) + ": catalog metric '" + spec + "' needs a dimension (--dim)");
    return catalog_metric(spec, dim);
  }
  if (std::filesystem::exists(spec)) return load_metric_file(spec);
  throw ConfigError(std::string(what) + ": '" + spec + "' is neither a catalog metric nor a readable file");
}

void box_must_cover(const CommonOpts& o, const HermitianMetricField& m) {
  if (o.box <= m.exclusion_radius)
    throw ConfigError("--box (" + std::to_string(o.box) + ") must exceed the exclusion radius of metric '" +
                      m.name + "' (" + std::to_string(m.exclusion_radius) + ")");
}

void emit(const std::string& text, const CommonOpts& o) {
  std::cout << text;
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write report to " + o.out);
    f << text;
  }
}

int run_classify(const std::string& metric_spec, int dim, const CommonOpts& o) {
  validate_common(o);
  HermitianMetricField m = resolve_metric(metric_spec, dim, "--metric");
  box_must_cover(o, m);
  auto pts = sample_points(m.n, o.samples, o.seed, o.box, m.exclusion_radius);
  StructureReport rep = classify(m, pts, o.tol);
  rep.seed = o.seed;

  ReportConfig cfg = base_config("classify", o);
  cfg.metric = m.name;
  cfg.dim = m.n;
  emit(o.format == "json" ? render_classify_json(cfg, rep) : render_classify_text(cfg, rep), o);
  return 0;
}

int run_check_map(const std::string& map_path, const std::string& source_spec, const std::string& target_spec,
                  const CommonOpts& o) {
  validate_common(o);
  MapField phi = load_map_file(map_path);
  HermitianMetricField source =
      source_spec.empty() ? flat_metric(phi.source_dim) : resolve_metric(source_spec, phi.source_dim, "--source-metric");
  std::string target_ref = !target_spec.empty() ? target_spec
                           : !phi.target_metric_ref.empty() ? phi.target_metric_ref
                                                            : std::string("flat");
  HermitianMetricField target = resolve_metric(target_ref, phi.target_dim, "--target-metric");
  if (source.n != phi.source_dim) throw ConfigError("source metric dimension does not match the map");
  if (target.n != phi.target_dim) throw ConfigError("target metric dimension does not match the map");
  box_must_cover(o, source);

  auto pts = sample_points(phi.source_dim, o.samples, o.seed, o.box, source.exclusion_radius);
  ResidualReport rep = evaluate_map_report(phi, source, target, pts, o.tol);
  rep.seed = o.seed;
  MorphismVerdict verdict = is_pluriharmonic_morphism(phi, source, target, pts, o.tol);

  ReportConfig cfg = base_config("check-map", o);
  cfg.map = phi.name;
  cfg.source_metric = source.name;
  cfg.target_metric = target.name;
  emit(o.format == "json" ? render_map_json(cfg, rep, verdict) : render_map_text(cfg, rep, verdict), o);
  return 0;
}

int run_chain(const std::string& psi_path, const std::string& phi_path, const std::string& middle_spec,
              const std::string& target_spec, const CommonOpts& o) {
  validate_common(o);
  MapField psi = load_map_file(psi_path);
  MapField phi = load_map_file(phi_path);
  HermitianMetricField metric_n =
      middle_spec.empty() ? flat_metric(psi.target_dim) : resolve_metric(middle_spec, psi.target_dim, "--metric");
  HermitianMetricField metric_p =
      target_spec.empty() ? flat_metric(phi.target_dim) : resolve_metric(target_spec, phi.target_dim, "--target-metric");
  if (psi.target_dim != phi.source_dim) throw ConfigError("psi target dimension does not match phi source dimension");
  if (metric_n.n != psi.target_dim) throw ConfigError("--metric dimension does not match the middle chart");
  if (metric_p.n != phi.target_dim) throw ConfigError("--target-metric dimension does not match phi");

  auto pts = sample_points(psi.source_dim, o.samples, o.seed, o.box, 0.0);
  ChainReport rep;
  rep.tol = o.tol;
  for (const auto& p : pts) {
    MapJets jets = map_jets(psi, p);
    if (!admissible(metric_n, jets.image)) continue;
    ChainRuleResult res = chain_rule_check(psi, phi, metric_n, metric_p, p);
    rep.samples.push_back(p);
    rep.gaps.push_back(res.max_difference);
    rep.max_gap = std::max(rep.max_gap, res.max_difference);
  }
  if (rep.samples.empty())
    throw MetricError("chain: no samples whose psi-image is admissible for metric '" + metric_n.name + "'");
  rep.pass = rep.max_gap <= o.tol;

  ReportConfig cfg = base_config("chain", o);
  cfg.psi = psi.name;
  cfg.phi = phi.name;
  cfg.metric = metric_n.name;
  cfg.target_metric = metric_p.name;
  emit(o.format == "json" ? render_chain_json(cfg, rep) : render_chain_text(cfg, rep), o);
  return rep.pass ? 0 : 1;
}

int run_suite(const CommonOpts& o) {
  validate_common(o);
  SuiteParams params;
  params.samples = o.samples;
  params.seed = o.seed;
  params.tol = o.tol;
  params.box = o.box;
  PaperSuiteReport rep = run_paper_suite(params);

  ReportConfig cfg = base_config("paper-suite", o);
  emit(o.format == "json" ? render_suite_json(cfg, rep) : render_suite_text(cfg, rep), o);
  return rep.overall ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical residual engine for Hermitian structures and pluriharmonic maps"};
  app.require_subcommand(1);

  CommonOpts classify_opts, map_opts, chain_opts, suite_opts;
  std::string metric_spec, map_path, source_spec, target_spec;
  std::string psi_path, phi_path, middle_spec, chain_target_spec;
  int dim = 0;

  CLI::App* cmd_classify = app.add_subcommand("classify", "classify the Hermitian structure of a metric");
  cmd_classify->add_option("--metric", metric_spec, "catalog name (flat|hopf|fubini_study) or metric file")->required();
  cmd_classify->add_option("--dim", dim, "chart dimension for catalog metrics");
  add_common(cmd_classify, classify_opts);

  CLI::App* cmd_map = app.add_subcommand("check-map", "evaluate map residuals and the morphism verdict");
  cmd_map->add_option("--map", map_path, "map file")->required();
  cmd_map->add_option("--source-metric", source_spec, "source metric (catalog name or file; default flat)");
  cmd_map->add_option("--target-metric", target_spec, "target metric (catalog name or file; default from map file)");
  add_common(cmd_map, map_opts);

  CLI::App* cmd_chain = app.add_subcommand("chain", "verify the chain-rule identity for a composition");
  cmd_chain->add_option("--psi", psi_path, "inner map file (psi: M -> N)")->required();
  cmd_chain->add_option("--phi", phi_path, "outer map file (phi: N -> P)")->required();
  cmd_chain->add_option("--metric", middle_spec, "metric on the middle chart N (default flat)");
  cmd_chain->add_option("--target-metric", chain_target_spec, "metric on P (default flat)");
  add_common(cmd_chain, chain_opts);

  CLI::App* cmd_suite = app.add_subcommand("paper-suite", "run the built-in verification suite P1..P9");
  add_common(cmd_suite, suite_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (cmd_classify->parsed()) return run_classify(metric_spec, dim, classify_opts);
    if (cmd_map->parsed()) return run_check_map(map_path, source_spec, target_spec, map_opts);
    if (cmd_chain->parsed()) return run_chain(psi_path, phi_path, middle_spec, chain_target_spec, chain_opts);
    if (cmd_suite->parsed()) return run_suite(suite_opts);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const MetricError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SamplerError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
