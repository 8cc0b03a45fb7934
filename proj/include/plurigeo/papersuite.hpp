#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace plurigeo {

struct SuiteParams {
  int samples = 32;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  double box = 2.0;
};

struct SuiteCheck {
  std::string id;
  std::string description;
  bool pass = false;
  std::vector<std::pair<std::string, double>> residuals;
  double tolerance = 0.0;
};

struct PaperSuiteReport {
  std::vector<SuiteCheck> checks;
  bool overall = false;
};

// Built-in verification suite P1..P9: golden Christoffel values on the Hopf
// chart, catalog classification, pluriharmonicity of holomorphic maps into
// Kaehler targets, the (1,1)-geodesic obstruction on Hopf, morphism pullback
// and chain-rule identities, and the harmonic trace identity.
PaperSuiteReport run_paper_suite(const SuiteParams& params);

}  // namespace plurigeo
