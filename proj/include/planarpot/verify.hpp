#pragma once

#include <string>

#include "bergman.hpp"
#include "dbar.hpp"
#include "potential.hpp"
#include "spectral.hpp"

namespace planarpot {

struct ReportRow {
  std::string inequality; // stable id, e.g. "blocki", "thm_capacity_radius"
  std::string domain;
  std::string parameters; // "alpha=0.3;z=0.1+0.2i" style key=value list
  double lhs = 0;         // the provably larger side
  double rhs = 0;
  double margin = 0;      // lhs - rhs
  double tolerance = 0;   // relative slack granted to this inequality id
  bool pass = false;
  std::string resolutions;
};

struct SuiteConfig {
  double resolution = 64;        // kernel / dbar grids
  double eigen_resolution = 96;  // eigenvalue / Hardy grids
  int degree = 24;
  std::vector<double> alphas{0.1, 0.3, 0.5};
  std::vector<double> p_ladder{1.5, 1.7, 1.9, 1.95, 1.99};
  int capacity_samples = 256;
  CapacityRadiusOptions radius;
};

std::vector<Domain> default_corpus();

// One row per inequality instance; individual failures are recorded as
// failing rows, never abort the suite. Rows are ordered by
// (inequality, domain, parameters).
std::vector<ReportRow> run_suite(const std::vector<Domain>& corpus, const SuiteConfig& config);

// min over the corpus of kappa / lambda1 (kappa = inf of the kernel diagonal)
double c0_estimate(const std::vector<Domain>& corpus, const SuiteConfig& config);

struct ExcisionRow {
  double excised_length = 0;
  double capacity = 0;   // C_l of the excised segment
  double difference = 0; // |K_{Omega\E}(z,w) - K_Omega(z,w)|
};

struct ExcisionSweepResult {
  std::vector<ExcisionRow> rows; // shrinking excisions, capacity decreasing
  double fitted_exponent = 0;    // a in d ~ C [log(r0/C_l)]^{-a}
  double r0 = 0;                 // min boundary distance of the probe points
  double point_difference = 0;   // kernel change under a one-point excision
  cxd z, w;
};

// Excise centered segments of length 4^{1-k}, k = 1..steps, from the domain
// and track the kernel change at a fixed off-slit pair; finish with a
// single-point excision (polar, must be invisible).
ExcisionSweepResult excision_sweep(const Domain& domain, cxd z, cxd w, int steps = 6,
                                   const SuiteConfig& config = {});

// Deterministic cell-rect heatmap; fixed blue-white-red ramp, %.6e geometry.
void svg_heatmap(const ScalarField& f, const std::string& path);

void emit_report_csv(const std::vector<ReportRow>& rows, const std::string& path);
void emit_report_json(const std::vector<ReportRow>& rows, const std::string& path);
std::vector<ReportRow> parse_report_json(const std::string& path);

} // namespace planarpot
