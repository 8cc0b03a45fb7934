#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plurigeo/connection.hpp"
#include "plurigeo/maps.hpp"
#include "plurigeo/morphism.hpp"
#include "plurigeo/papersuite.hpp"

namespace plurigeo {

// Echo of the run configuration, serialized at the head of every report with
// a fixed key order.  Empty string fields are omitted.
struct ReportConfig {
  std::string command;
  std::string metric;
  std::string map;
  std::string psi, phi;
  std::string source_metric, target_metric;
  int dim = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  double fd_step = 0.0;
  double box = 0.0;
  std::string format;
};

struct ChainReport {
  std::vector<ChartPoint> samples;
  std::vector<double> gaps;  // per-sample max entrywise |lhs - rhs|
  double max_gap = 0.0;
  bool pass = false;
  double tol = 0.0;
};

// All floating values are serialized with 17 significant digits and keys are
// emitted in a fixed order, so identical configurations produce byte-identical
// reports.
std::string render_classify_json(const ReportConfig& cfg, const StructureReport& rep);
std::string render_classify_text(const ReportConfig& cfg, const StructureReport& rep);

std::string render_map_json(const ReportConfig& cfg, const ResidualReport& rep, const MorphismVerdict& verdict);
std::string render_map_text(const ReportConfig& cfg, const ResidualReport& rep, const MorphismVerdict& verdict);

std::string render_chain_json(const ReportConfig& cfg, const ChainReport& rep);
std::string render_chain_text(const ReportConfig& cfg, const ChainReport& rep);

std::string render_suite_json(const ReportConfig& cfg, const PaperSuiteReport& rep);
std::string render_suite_text(const ReportConfig& cfg, const PaperSuiteReport& rep);

}  // namespace plurigeo
