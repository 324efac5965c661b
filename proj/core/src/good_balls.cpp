#include "embolic/good_balls.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "embolic/errors.hpp"
#include "embolic/parallel.hpp"

namespace embolic {

namespace {

// Single comparison shared by growth_ok and the search, so the two can never
// disagree on boundary cases.
inline bool growth(double vol_R, double vol_5R, double alpha) {
  return vol_5R <= alpha * vol_R;
}

void check_params(const MetricMeasureSpace& space, const GoodBallParams& p) {
  if (!(p.R0 > 0.0) || !std::isfinite(p.R0))
    throw ValidationError("good balls: R0 must be positive and finite");
  if (!(p.theta >= 0.0)) throw ValidationError("good balls: theta must be nonnegative");
  if (!(p.alpha >= 1.0) || !std::isfinite(p.alpha))
    throw ValidationError("good balls: alpha must be >= 1 and finite");
  (void)space;
}

}  // namespace

bool growth_ok(const MetricMeasureSpace& space, int p, double R, double alpha) {
  if (!(R > 0.0)) throw ValidationError("growth_ok: R must be positive");
  const double vR = space.ball_volume(p, R);
  const double v5 = space.ball_volume(p, 5.0 * R);
  return growth(vR, v5, alpha);
}

std::vector<double> candidate_radii(const MetricMeasureSpace& space, int p, double R0) {
  if (!(R0 > 0.0) || !std::isfinite(R0))
    throw ValidationError("candidate_radii: R0 must be positive and finite");
  if (p < 0 || p >= space.point_count())
    throw ValidationError("candidate_radii: point index out of range");
  const double* row = space.row(p);
  const int m = space.point_count();
  std::vector<double> c;
  double d_min = std::numeric_limits<double>::infinity();
  for (int x = 0; x < m; ++x) {
    const double v = row[x];
    if (v > 0.0) {
      if (v <= R0) c.push_back(v);
      if (v < d_min) d_min = v;
    }
  }
  c.push_back(R0);
  if (std::isfinite(d_min)) {
    const double fallback = d_min / 6.0;
    if (fallback <= R0) c.push_back(fallback);
  }
  std::sort(c.begin(), c.end(), std::greater<double>());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

GoodBall find_good_ball(const MetricMeasureSpace& space, int p, const GoodBallParams& params) {
  check_params(space, params);
  const std::vector<double> cands = candidate_radii(space, p, params.R0);
  for (const double R : cands) {
    const double vR = space.ball_volume(p, R);
    const double v5 = space.ball_volume(p, 5.0 * R);
    if (growth(vR, v5, params.alpha))
      return GoodBall{p, R, vR, v5, scale_index(R, params.R0)};
  }
  // Unreachable: either the fallback d_min/6 is a candidate (both balls {p}),
  // or d_min > 6 R0 > 5 R0 and the cap R0 has both balls {p}.
  throw InternalError("find_good_ball: no candidate satisfied the growth condition at point " +
                      std::to_string(p));
}

int scale_index(double radius, double R0) {
  if (!(R0 > 0.0) || !std::isfinite(R0))
    throw ValidationError("scale_index: R0 must be positive and finite");
  if (!(radius > 0.0) || !(radius <= R0))
    throw ValidationError("scale_index: radius must lie in (0, R0]");
  if (radius == R0) return 0;
  int k = 1;
  double lower = R0 / 5.0;  // open lower end of the k-th bracket
  while (!(radius > lower)) {
    lower /= 5.0;
    ++k;
  }
  return k;
}

std::vector<GoodBall> good_ball_table(const MetricMeasureSpace& space,
                                      const GoodBallParams& params, int threads) {
  check_params(space, params);
  const std::size_t m = static_cast<std::size_t>(space.point_count());
  std::vector<GoodBall> table(m);
  parallel_for(m, threads, [&](std::size_t p) {
    table[p] = find_good_ball(space, static_cast<int>(p), params);
  });
  return table;
}

}  // namespace embolic
