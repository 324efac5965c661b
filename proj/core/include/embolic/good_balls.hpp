#pragma once

#include <vector>

#include "embolic/space.hpp"

namespace embolic {

struct GoodBallParams {
  double R0 = 0.0;     // radius cap; pipeline entry enforces R0 <= inj/2
  double theta = 0.0;  // nonnegative
  double alpha = 0.0;  // 5^(n + theta) for the space's n
};

/// Ball whose 5x enlargement satisfies the volume-growth bound
/// vol_5R <= alpha * vol_R, with `radius` the largest candidate <= R0 that
/// does so (all larger candidates fail the bound).
struct GoodBall {
  int center = 0;
  double radius = 0.0;
  double vol_R = 0.0;
  double vol_5R = 0.0;
  int scale_index = 0;
};

/// True iff vol(ball(p,5R)) <= alpha * vol(ball(p,R)). R must be positive.
bool growth_ok(const MetricMeasureSpace& space, int p, double R, double alpha);

/// Candidate radii at p, descending: the distinct values of dist(p,.) in
/// (0, R0], the cap R0 itself, and the fallback d_min(p)/6 when it does not
/// exceed R0 (d_min = nearest-neighbor distance). Volumes are step functions
/// of R, so these are the only radii where anything changes below R0.
std::vector<double> candidate_radii(const MetricMeasureSpace& space, int p, double R0);

/// Largest candidate radius at p satisfying growth_ok. The fallback
/// candidate makes both balls equal {p}, so the search never fails: when
/// d_min/6 > R0 the nearest neighbor is farther than 6 R0 and the cap radius
/// R0 itself has both balls equal {p}. A single-point space returns the
/// degenerate good ball of radius R0.
GoodBall find_good_ball(const MetricMeasureSpace& space, int p, const GoodBallParams& params);

/// Scale bracket of a good radius: k = 0 iff radius == R0, otherwise the
/// unique k >= 1 with 5^(-k) R0 < radius <= 5^(-k+1) R0 (half-open at the
/// bottom, so radius == R0/5 lands in k = 2).
int scale_index(double radius, double R0);

/// One good ball per point, point-index order. Embarrassingly parallel;
/// results are collected per index so the table is thread-count independent.
std::vector<GoodBall> good_ball_table(const MetricMeasureSpace& space,
                                      const GoodBallParams& params, int threads = 1);

}  // namespace embolic
