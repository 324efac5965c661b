#pragma once

#include <array>
#include <string>
#include <vector>

#include "embolic/good_balls.hpp"

namespace embolic {

/// Maximal disjoint system of good balls. Radii are nonincreasing, the
/// R-balls are pairwise disjoint in the strict closed-ball sense
/// dist(p_i, p_j) > R_i + R_j, and every sample point lies in some doubled
/// ball B(p_j, 2 R_j).
struct Packing {
  std::vector<GoodBall> selected;  // j = 0..N-1, sorted by (radius desc, center asc)

  long long N() const { return static_cast<long long>(selected.size()); }
};

/// Greedy selection over the good-ball table in order of decreasing radius
/// (ties broken by ascending center index): a ball is kept iff its R-ball is
/// disjoint from every previously kept R-ball. The input order is irrelevant
/// (the table is sorted first). Verifies all three packing invariants on the
/// result and throws InternalError if any fails — a failure indicates a bug,
/// not bad data.
Packing build_packing(const MetricMeasureSpace& space, std::vector<GoodBall> table);

/// S(x) for every sample point x: the ascending list of packing indices j
/// with dist(p_j, x) <= 2 R_j. Shared by the nerve construction and the
/// intersection table, which makes T = t_1 hold by construction.
std::vector<std::vector<int>> cover_witness_sets(const MetricMeasureSpace& space,
                                                 const Packing& packing, int threads = 1);

/// Pairwise intersections of the doubled balls under witness semantics.
/// neighbors[j] lists the partners i > j (hence R_i <= R_j), so each
/// unordered pair is counted once and attributed to its smaller-index
/// (larger-radius) member. T_center_distance counts pairs that pass the
/// center-distance test dist(p_i,p_j) <= 2R_i + 2R_j instead; every
/// witnessed pair passes it, but not conversely.
struct IntersectionTable {
  std::vector<std::vector<int>> neighbors;
  long long T = 0;
  long long T_center_distance = 0;
};

IntersectionTable build_intersection_table(const MetricMeasureSpace& space,
                                           const Packing& packing, int threads = 1);

/// Direct re-verification of the three packing invariants.
struct PackingCheckReport {
  bool radii_sorted_ok = true;
  bool disjoint_ok = true;
  bool coverage_ok = true;
  std::vector<std::string> failures;

  bool ok() const { return radii_sorted_ok && disjoint_ok && coverage_ok; }
};

PackingCheckReport check_packing(const MetricMeasureSpace& space, const Packing& packing);

/// For every intersecting pair (j,i), j < i: checks the member-set inclusion
/// B(p_i, R_i) ⊆ B(p_j, 5 R_j). This is the form the triangle inequality
/// actually yields (dist(p_j,x) <= 2R_j + 3R_i <= 5R_j). The variant with
/// target radius 5 R_i ("paper form") is checked separately and reported,
/// never required. Also re-verifies that the R-balls over each neighbor list
/// are pairwise disjoint, which underwrites the counting chain's volume sum.
struct FiveBallReport {
  long long pairs_checked = 0;
  bool ok = true;
  bool paper_form_ok = true;
  bool neighbors_disjoint_ok = true;
  std::vector<std::array<long long, 2>> violations;             // (j,i), capped
  std::vector<std::array<long long, 2>> paper_form_violations;  // (j,i), capped
};

FiveBallReport five_ball_check(const MetricMeasureSpace& space, const Packing& packing,
                               const IntersectionTable& table);

/// Numeric verification of the volume counting chain, link by link:
///  (a) total volume >= sum of selected R-ball volumes (equality flagged),
///  (b) vol(B(p_j,5R_j)) <= alpha * vol(B(p_j,R_j)) for every j,
///  (c) sum of neighbor R-ball volumes <= vol(B(p_j,5R_j)) for every j,
///  (d) vol(B(p_j,R_j))/R_j^n >= beta_n for every selected radius above
///      r_floor (radii at or below r_floor are noted, not failed),
///  (e) T <= rho_hat * 5^(n + (n+1)*sqrt(log_5 rho_hat)) with
///      rho_hat = vol/(beta_n R0^n).
/// Links comparing differently-grouped floating-point sums use a 1e-12
/// relative slack; that absorbs reassociation noise only.
struct CountingChainReport {
  bool a_ok = true, b_ok = true, c_ok = true, d_ok = true, e_ok = true;
  bool a_equality = false;
  long long d_below_floor = 0;  // selected radii at or below r_floor
  double sum_selected_vol = 0.0;
  double T_bound = 0.0;  // right-hand side of link (e)
  std::vector<std::string> failures;

  bool ok() const { return a_ok && b_ok && c_ok && d_ok && e_ok; }
};

CountingChainReport counting_chain_check(const MetricMeasureSpace& space, const Packing& packing,
                                         const IntersectionTable& table, double alpha,
                                         double beta_n, double r_floor, double R0);

}  // namespace embolic
