#pragma once

#include <string>
#include <vector>

#include "embolic/homology.hpp"
#include "embolic/nerve.hpp"
#include "embolic/packing.hpp"

namespace embolic {

/// Croke-type local volume constant for the bound vol(B(p,R)) >= beta_n R^n.
/// The default provenance is "empirical": beta_n is the exact minimum of
/// vol(ball(p,R))/R^n over every sample point and every candidate radius in
/// (r_floor, R0], so the local inequality holds for every checked ball by
/// construction. r_floor = 3x the maximum nearest-neighbor spacing screens
/// out sampling-noise radii whose balls are single points.
struct CrokeEstimate {
  double beta_n = 0.0;
  double r_floor = 0.0;
  std::string provenance = "empirical";  // or "user"
  int argmin_point = -1;                 // attaining point (empirical only)
  double argmin_radius = 0.0;            // attaining radius (empirical only)
};

/// 3x the maximum over points of the nearest-neighbor distance (0 for a
/// single-point space).
double croke_r_floor(const MetricMeasureSpace& space);

/// Empirical estimate. Throws ValidationError when R0 > inj/2 or R0 is not
/// positive/finite, ResourceError ("resolution insufficient") when
/// R0 <= r_floor — then no candidate radius survives the floor.
CrokeEstimate croke_estimate(const MetricMeasureSpace& space, double R0, int threads = 1);

/// User-supplied constant for sensitivity studies: beta_n is taken as given
/// (must be positive and finite), r_floor is still computed so the counting
/// chain can report radii below it, and no resolution check applies.
CrokeEstimate user_croke(const MetricMeasureSpace& space, double beta_n);

struct ThetaResult {
  double theta = 0.0;
  bool clamped = false;  // rho_hat < 1: theta clamped at 0
};

/// theta = sqrt(log_5 rho_hat) for rho_hat >= 1, else 0 with the clamped
/// flag. Nonpositive rho_hat is a ValidationError.
ThetaResult compute_theta(double rho_hat);

/// Scale-index budget: the construction promises k < theta for every good
/// ball. Integer k against real theta is tested as k_max < theta + 1; the
/// window theta < k_max < theta + 1 (k_max = ceil(theta) for non-integer
/// theta) passes with the boundary flag set rather than failing.
struct ScaleBoundReport {
  int k_max = 0;
  double theta = 0.0;
  bool ok = true;
  bool boundary = false;
};

ScaleBoundReport scale_bound_check(const Packing& packing, double theta);

/// The simplex-count bound: t_k <= 2 rho_hat 5^(n + (n+1) sqrt(log_5
/// rho_hat)). bound_T is the un-doubled form, which caps the number of
/// intersecting doubled-ball pairs T. rho_hat < 1 clamps the square root at
/// 0 (bound_T = rho_hat 5^n) and sets the flag.
struct Theorem13Bound {
  double bound_T = 0.0;
  double bound_tk = 0.0;  // 2 * bound_T
  bool clamped = false;
};

Theorem13Bound theorem13_bound(double rho_hat, int n);

/// Dimensional constants, exact evaluation with x = 2^n/beta_n:
///   Cn = x 5^(2n + (n+1) sqrt(log_5 x)),   Cnprime = (n+1) sqrt(ln 5),
///   Dn = 2 Cn,                             Dnprime = Cnprime.
/// x < 1 clamps the square root at 0 with a flag. Logarithms are natural
/// unless the base-5 form is explicit; 5^((n+1) sqrt(log_5 x)) =
/// exp(Cnprime sqrt(ln x)) holds identically and is covered by tests.
struct ExplicitConstants {
  double Cn = 0.0;
  double Cnprime = 0.0;
  double Dn = 0.0;
  double Dnprime = 0.0;
  bool clamped = false;
};

ExplicitConstants explicit_constants(int n, double beta_n);

/// Per-dimension verdict for the main inequality. The testable form is the
/// forward chain b_k <= t_k <= bound_tk (since the evaluated metric gives an
/// upper proxy for the embolic volume). The literal lower-bound form
/// Cn b_k / exp(Cnprime sqrt(ln b_k)) is evaluated and compared against rho
/// informationally only: its printed constants belong to the forward bound
/// and inverting the relation has no closed form.
struct TheoremEntry {
  int k = 0;
  long long b_k = 0;
  long long t_k = 0;
  bool skipped = false;  // b_k == 0
  bool ok = true;        // forward chain (true when skipped)
  double literal_rhs = 0.0;
  bool literal_le_rho = true;  // informational, not asserted
};

struct Theorem11Report {
  std::vector<TheoremEntry> entries;  // k = 0..dmax
  bool all_ok = true;                 // AND over non-skipped entries
};

Theorem11Report verify_theorem11(double rho, double rho_hat, int n, double beta_n,
                                 const std::vector<long long>& t,
                                 const std::vector<long long>& b);

/// One packing member as it appears in the report.
struct PackingEntry {
  int center = 0;
  double radius = 0.0;
  int scale_index = 0;
  double vol_R = 0.0;
  double vol_5R = 0.0;
};

/// Complete verification verdict; field order here is the report schema
/// order. mandatory_ok gates exit code 0: packing invariants, the 5-ball
/// inclusion, all five counting-chain links, b_k <= t_k <= bound_tk, and the
/// Betti match whenever ground truth is present.
struct BoundReport {
  std::string input;
  long long m = 0;
  int n = 0;
  double inj = 0.0;
  double vol = 0.0;
  int p = 2;
  int dmax = 0;
  int multiplicity_cap = 0;
  std::string r0_policy;  // "half-inj" or "user"
  double R0 = 0.0;
  std::string theta_policy;  // "paper" or "user"
  double theta = 0.0;
  bool theta_clamped = false;
  double alpha = 0.0;
  double beta_n = 0.0;
  std::string beta_n_provenance;
  double r_floor = 0.0;
  double rho = 0.0;      // vol / inj^n
  double rho_hat = 0.0;  // vol / (beta_n R0^n)
  long long N = 0;
  int k_max_scale = 0;
  long long T = 0;
  long long T_center_distance = 0;
  int max_multiplicity = 0;
  std::vector<long long> t;
  std::vector<long long> b;
  std::vector<long long> truth;
  bool has_truth = false;
  bool betti_match_ok = true;  // vacuously true without truth
  double bound_T = 0.0;
  double bound_tk = 0.0;
  bool bound_clamped = false;
  double Cn = 0.0;
  double Cnprime = 0.0;
  double Dn = 0.0;
  double Dnprime = 0.0;
  bool Cn_clamped = false;
  bool packing_radii_sorted_ok = true;
  bool packing_disjoint_ok = true;
  bool packing_coverage_ok = true;
  bool five_ball_ok = true;
  bool five_ball_paper_form_ok = true;
  bool five_ball_neighbors_disjoint_ok = true;
  bool chain_a_ok = true;
  bool chain_a_equality = false;
  bool chain_b_ok = true;
  bool chain_c_ok = true;
  bool chain_d_ok = true;
  long long chain_d_below_floor = 0;
  bool chain_e_ok = true;
  bool scale_bound_ok = true;
  bool scale_bound_boundary = false;
  bool t1_equals_T = true;
  std::vector<bool> main_inequality_ok;       // per k
  std::vector<bool> main_inequality_skipped;  // per k (b_k == 0)
  std::vector<double> theorem11_literal_rhs;  // per k, informational
  bool bk_le_tk_ok = true;
  bool tk_le_bound_ok = true;
  bool claim_t0_le_2t1 = false;
  bool claim_t0_le_2t1_na = true;
  bool claim_ti_le_t1 = true;
  bool mandatory_ok = false;
  std::vector<PackingEntry> packing;
};

/// Everything assemble_report consumes. Pointer members are stage outputs;
/// a null one means that stage never ran and is reported as an internal
/// error naming the stage.
struct StageOutputs {
  std::string input;
  int p = 2;
  int dmax = 0;
  int multiplicity_cap = 0;
  std::string r0_policy;
  std::string theta_policy;
  std::vector<long long> truth;
  bool has_truth = false;

  const MetricMeasureSpace* space = nullptr;
  const CrokeEstimate* croke = nullptr;
  const ThetaResult* theta = nullptr;
  const GoodBallParams* params = nullptr;
  const Packing* packing = nullptr;
  const IntersectionTable* table = nullptr;
  const PackingCheckReport* packing_check = nullptr;
  const FiveBallReport* five_ball = nullptr;
  const CountingChainReport* chain = nullptr;
  const NerveResult* nerve = nullptr;
  const SimplexCountReport* counts = nullptr;
  const BettiProfile* betti = nullptr;
  const BettiMatchReport* betti_match = nullptr;  // required iff has_truth
  const ScaleBoundReport* scale = nullptr;
  const Theorem13Bound* bound = nullptr;
  const ExplicitConstants* constants = nullptr;
  const Theorem11Report* theorem11 = nullptr;
};

BoundReport assemble_report(const StageOutputs& stages);

}  // namespace embolic
