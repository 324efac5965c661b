#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "embolic/errors.hpp"
#include "embolic/good_balls.hpp"
#include "embolic/mathutil.hpp"

using namespace embolic;

namespace {

// Points on a line: x_i = positions[i], weights all 1.
MetricMeasureSpace line_space(const std::vector<double>& positions, double inj = 100.0) {
  const int m = static_cast<int>(positions.size());
  std::vector<double> w(static_cast<std::size_t>(m), 1.0);
  std::vector<double> d(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      d[static_cast<std::size_t>(i) * m + j] = std::fabs(positions[i] - positions[j]);
  return MetricMeasureSpace(1, inj, std::move(w), std::move(d));
}

}  // namespace

TEST_CASE("good_balls: two points far apart keep the cap radius") {
  const MetricMeasureSpace s = line_space({0.0, 1.0});
  const GoodBallParams params{0.3, 0.0, 5.0};
  const GoodBall g = find_good_ball(s, 0, params);
  // B(0, 0.3) = {0} and B(0, 1.5) = {0, 1}: growth 2 <= 5 passes at the cap.
  CHECK(g.radius == 0.3);
  CHECK(g.vol_R == 1.0);
  CHECK(g.vol_5R == 2.0);
  CHECK(g.scale_index == 0);
}

TEST_CASE("good_balls: growth_ok matches the definition") {
  const MetricMeasureSpace s = line_space({0.0, 1.0, 2.0, 3.0});
  // B(0,1) = {0,1} (vol 2), B(0,5) = all (vol 4): ratio 2.
  CHECK(growth_ok(s, 0, 1.0, 2.0));
  CHECK_FALSE(growth_ok(s, 0, 1.0, 1.9));
}

TEST_CASE("good_balls: candidate radii are the volume breakpoints") {
  const MetricMeasureSpace s = line_space({0.0, 1.0, 2.0, 7.0});
  const std::vector<double> cands = candidate_radii(s, 0, 2.5);
  // Distances from 0: 1, 2, 7. In (0, 2.5]: {1, 2}; cap 2.5; d_min/6 = 1/6.
  const std::vector<double> expected{2.5, 2.0, 1.0, 1.0 / 6.0};
  CHECK(cands == expected);

  // Cap smaller than every distance: only the cap and the fallback remain.
  const std::vector<double> tiny = candidate_radii(s, 0, 0.5);
  CHECK(tiny == std::vector<double>{0.5, 1.0 / 6.0});

  // Fallback drops out when the nearest neighbor is beyond 6 R0.
  const std::vector<double> lone = candidate_radii(s, 3, 0.5);
  CHECK(lone == std::vector<double>{0.5});
}

TEST_CASE("good_balls: clustered points force the fallback radius") {
  // 100 points spaced 0.01 apart plus one point 10 away from the cluster's
  // end. The far point's nearest neighbor is at distance 10, so its only
  // candidates at R0 = 3 are the cap (fails: the 15-ball swallows the
  // cluster) and d_min/6 = 5/3 (passes: both balls are just the point).
  std::vector<double> xs;
  for (int i = 0; i < 100; ++i) xs.push_back(0.01 * i);
  xs.push_back(0.99 + 10.0);
  const MetricMeasureSpace s = line_space(xs);
  const GoodBallParams params{3.0, 0.0, 25.0};

  const GoodBall far = find_good_ball(s, 100, params);
  CHECK(far.radius == doctest::Approx(10.0 / 6.0).epsilon(1e-15));
  CHECK(far.vol_R == 1.0);
  CHECK(far.vol_5R == 1.0);

  // Cluster points keep the cap: the 15-ball adds only the far point.
  const GoodBall inner = find_good_ball(s, 50, params);
  CHECK(inner.radius == 3.0);
}

TEST_CASE("good_balls: uniform circle keeps the cap radius everywhere") {
  const MetricMeasureSpace s = circle_space(1000);
  const GoodBallParams params{kPi / 20, 0.0, 25.0};
  const std::vector<GoodBall> table = good_ball_table(s, params);
  for (const GoodBall& g : table) {
    CHECK(g.radius == kPi / 20);
    CHECK(g.scale_index == 0);
  }
}

TEST_CASE("good_balls: scale_index brackets") {
  const double R0 = 0.7;
  CHECK(scale_index(R0, R0) == 0);
  CHECK(scale_index(0.9 * R0, R0) == 1);
  CHECK(scale_index(0.3 * R0, R0) == 1);   // (R0/5, R0]
  CHECK(scale_index(R0 / 5, R0) == 2);     // half-open bottom: lands below
  CHECK(scale_index(0.1 * R0, R0) == 2);   // (R0/25, R0/5]
  CHECK(scale_index(R0 / 25, R0) == 3);
  CHECK(scale_index(1e-6 * R0, R0) == 9);  // 5^-9 < 1e-6 <= 5^-8
}

TEST_CASE("good_balls: contract holds exhaustively") {
  std::vector<double> xs;
  for (int i = 0; i < 60; ++i) xs.push_back(0.01 * i);
  xs.push_back(8.0);
  xs.push_back(8.7);

  struct Case {
    MetricMeasureSpace space;
    GoodBallParams params;
  };
  const Case cases[] = {{circle_space(200), GoodBallParams{kPi / 2, 0.5, pow5(1.5)}},
                        {line_space(xs), GoodBallParams{2.0, 0.0, 10.0}}};
  bool some_radius_below_cap = false;
  for (const Case& c : cases) {
    const std::vector<GoodBall> table = good_ball_table(c.space, c.params);
    REQUIRE(static_cast<int>(table.size()) == c.space.point_count());
    for (const GoodBall& g : table) {
      CHECK(growth_ok(c.space, g.center, g.radius, c.params.alpha));
      CHECK(g.vol_R == c.space.ball_volume(g.center, g.radius));
      CHECK(g.vol_5R == c.space.ball_volume(g.center, 5 * g.radius));
      CHECK(g.scale_index == scale_index(g.radius, c.params.R0));
      if (g.radius < c.params.R0) some_radius_below_cap = true;
      for (double cand : candidate_radii(c.space, g.center, c.params.R0)) {
        if (cand > g.radius) CHECK_FALSE(growth_ok(c.space, g.center, cand, c.params.alpha));
      }
    }
  }
  // The clustered space must actually exercise the maximality clause.
  CHECK(some_radius_below_cap);
}

TEST_CASE("good_balls: a larger alpha never shrinks the radius") {
  std::vector<double> xs;
  for (int i = 0; i < 50; ++i) xs.push_back(0.02 * i);
  xs.push_back(6.0);
  xs.push_back(6.05);
  const MetricMeasureSpace s = line_space(xs);
  for (int p : {0, 25, 50, 51}) {
    double prev = 0.0;
    for (double alpha : {2.0, 5.0, 25.0, 125.0}) {
      const GoodBall g = find_good_ball(s, p, GoodBallParams{1.5, 0.0, alpha});
      CHECK(g.radius >= prev);
      prev = g.radius;
    }
  }
}

TEST_CASE("good_balls: table is thread-count independent") {
  const MetricMeasureSpace s = flat_torus_space(1, 1, 12, 12);
  const GoodBallParams params{0.25, 1.0, pow5(3.0)};
  const std::vector<GoodBall> a = good_ball_table(s, params, 1);
  const std::vector<GoodBall> b = good_ball_table(s, params, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].center == b[i].center);
    CHECK(a[i].radius == b[i].radius);
    CHECK(a[i].vol_R == b[i].vol_R);
    CHECK(a[i].vol_5R == b[i].vol_5R);
    CHECK(a[i].scale_index == b[i].scale_index);
  }
}

TEST_CASE("good_balls: parameter validation") {
  const MetricMeasureSpace s = line_space({0.0, 1.0});
  CHECK_THROWS_AS(good_ball_table(s, GoodBallParams{0.0, 0.0, 5.0}), ValidationError);
  CHECK_THROWS_AS(good_ball_table(s, GoodBallParams{1.0, -0.5, 5.0}), ValidationError);
  CHECK_THROWS_AS(good_ball_table(s, GoodBallParams{1.0, 0.0, 0.5}), ValidationError);
}

TEST_CASE("good_balls: single point space returns the degenerate cap ball") {
  const MetricMeasureSpace s(1, 10.0, {2.0}, {0.0});
  const GoodBall g = find_good_ball(s, 0, GoodBallParams{4.0, 0.0, 5.0});
  CHECK(g.radius == 4.0);
  CHECK(g.vol_R == 2.0);
  CHECK(g.vol_5R == 2.0);
}
