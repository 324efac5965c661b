#pragma once

#include <string>
#include <vector>

#include "embolic/bounds.hpp"
#include "embolic/nerve.hpp"
#include "embolic/packing.hpp"
#include "embolic/report_json.hpp"
#include "embolic/space.hpp"

namespace embolic {

/// Knobs for a full run. Nonpositive sentinel values select the default
/// policies: R0 = inj/2 ("half-inj"), theta from compute_theta ("paper"),
/// beta_n from the empirical estimate, dmax = n + 1.
struct PipelineOptions {
  double r0 = -1.0;              // explicit R0; must satisfy 0 < R0 <= inj/2
  double theta_override = -1.0;  // explicit theta >= 0
  double beta_override = -1.0;   // explicit beta_n > 0 (provenance "user")
  int p = 2;                     // coefficient field characteristic
  int dmax = -1;                 // nerve dimension cutoff
  int multiplicity_cap = 24;     // witness-set size cap
  int threads = 1;
  bool has_truth = false;
  std::vector<long long> truth;  // expected Betti numbers when has_truth
  std::string input_name;        // recorded in the report verbatim
};

struct PipelineResult {
  BoundReport report;
  SimplicialComplex complex;
  Packing packing;
};

/// Full covering-trick run: validate -> croke -> theta/alpha -> good balls
/// -> packing -> nerve -> homology -> bounds. Every failure surfaces as a
/// StageError naming the stage and carrying the exit code from the contract
/// (2 validation, 4 resource/cap, 1 internal). Check failures do NOT throw:
/// they land in the report with mandatory_ok = false and the caller maps
/// that to exit code 3 after persisting the artifacts.
PipelineResult run_pipeline(const MetricMeasureSpace& space, const PipelineOptions& options);

}  // namespace embolic
