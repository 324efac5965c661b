#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "embolic/bounds.hpp"
#include "embolic/errors.hpp"
#include "embolic/mathutil.hpp"

using namespace embolic;

namespace {

// From-scratch restatement of the empirical Croke constant: minimum of
// vol(ball)/R^n over every point and every candidate radius (row distances
// in (r_floor, R0] plus R0 itself). Used for exact-equality comparison.
double oracle_beta(const MetricMeasureSpace& s, double R0) {
  const int m = s.point_count();
  double max_nn = 0.0;
  for (int i = 0; i < m; ++i) {
    double nn = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j)
      if (j != i) nn = std::min(nn, s.dist(i, j));
    max_nn = std::max(max_nn, nn);
  }
  const double floor = 3.0 * max_nn;
  REQUIRE(R0 > floor);

  double best = std::numeric_limits<double>::infinity();
  for (int p = 0; p < m; ++p) {
    std::vector<double> radii;
    for (int j = 0; j < m; ++j) {
      const double d = s.dist(p, j);
      if (d > floor && d <= R0) radii.push_back(d);
    }
    radii.push_back(R0);
    for (const double r : radii) {
      const double ratio = s.ball_volume(p, r) / powi(r, s.dim());
      if (ratio < best) best = ratio;
    }
  }
  return best;
}

Packing scale_packing(const std::vector<int>& scale_indices) {
  Packing p;
  for (int k : scale_indices) {
    GoodBall g;
    g.center = static_cast<int>(p.selected.size());
    g.radius = 1.0;
    g.vol_R = 1.0;
    g.vol_5R = 1.0;
    g.scale_index = k;
    p.selected.push_back(g);
  }
  return p;
}

}  // namespace

TEST_CASE("bounds: theta from the covering density") {
  CHECK(compute_theta(pow5(9.0)).theta == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(compute_theta(1.0).theta == 0.0);
  CHECK_FALSE(compute_theta(1.0).clamped);
  CHECK(compute_theta(std::pow(5.0, 0.25)).theta == doctest::Approx(0.5).epsilon(1e-12));

  const ThetaResult clamped = compute_theta(0.3);
  CHECK(clamped.theta == 0.0);
  CHECK(clamped.clamped);

  CHECK_THROWS_AS(compute_theta(0.0), ValidationError);
  CHECK_THROWS_AS(compute_theta(-2.0), ValidationError);

  // theta^2 recovers log_5 rho_hat to high relative accuracy
  for (const double rho : {1.5, 2.0, 8.0, 125.0, 3.0e4}) {
    const double th = compute_theta(rho).theta;
    CHECK(th * th == doctest::Approx(log5(rho)).epsilon(1e-12));
  }
}

TEST_CASE("bounds: simplex-count bound closed forms") {
  const Theorem13Bound unit = theorem13_bound(1.0, 1);
  CHECK(unit.bound_T == 5.0);
  CHECK(unit.bound_tk == 10.0);
  CHECK_FALSE(unit.clamped);

  const Theorem13Bound five = theorem13_bound(5.0, 1);
  CHECK(five.bound_T == 625.0);
  CHECK(five.bound_tk == 1250.0);

  const Theorem13Bound sq = theorem13_bound(25.0, 2);
  CHECK(sq.bound_T == doctest::Approx(577242.8959462427).epsilon(1e-12));
  CHECK(sq.bound_tk == doctest::Approx(1154485.7918924855).epsilon(1e-12));

  // rho_hat = 1 collapses to 2 * 5^n exactly
  CHECK(theorem13_bound(1.0, 1).bound_tk == 2.0 * pow5(1.0));
  CHECK(theorem13_bound(1.0, 2).bound_tk == 2.0 * pow5(2.0));
  CHECK(theorem13_bound(1.0, 3).bound_tk == 2.0 * pow5(3.0));

  const Theorem13Bound low = theorem13_bound(0.5, 1);
  CHECK(low.bound_T == 2.5);
  CHECK(low.bound_tk == 5.0);
  CHECK(low.clamped);

  double prev = 0.0;
  for (double rho = 0.25; rho < 1.0e4; rho *= 1.7) {
    const Theorem13Bound b = theorem13_bound(rho, 2);
    CHECK(b.bound_T > prev);
    CHECK(b.bound_tk == 2.0 * b.bound_T);
    prev = b.bound_T;
  }

  CHECK_THROWS_AS(theorem13_bound(0.0, 2), ValidationError);
}

TEST_CASE("bounds: explicit dimensional constants") {
  const ExplicitConstants c1 = explicit_constants(1, 2.0);  // x = 1
  CHECK(c1.Cn == 25.0);
  CHECK(c1.Cnprime == doctest::Approx(2.537272482359039).epsilon(1e-14));
  CHECK(c1.Dn == 50.0);
  CHECK(c1.Dnprime == c1.Cnprime);
  CHECK_FALSE(c1.clamped);

  const ExplicitConstants c2 = explicit_constants(2, kPi);  // x = 4/pi
  CHECK(c2.Cn == doctest::Approx(5166.186945886264).epsilon(1e-12));
  CHECK(c2.Cnprime == doctest::Approx(3.8059087235385585).epsilon(1e-14));
  CHECK(c2.Dn == 2.0 * c2.Cn);

  const ExplicitConstants big = explicit_constants(1, 4.0);  // x = 1/2 < 1
  CHECK(big.Cn == 12.5);
  CHECK(big.clamped);

  CHECK_THROWS_AS(explicit_constants(1, 0.0), ValidationError);
  CHECK_THROWS_AS(explicit_constants(1, -1.0), ValidationError);
}

TEST_CASE("bounds: 5-power versus exponential closed form") {
  for (const double x : {2.0, 10.0, 100.0}) {
    for (const int n : {1, 2, 3}) {
      const double via_pow5 = pow5((n + 1) * std::sqrt(log5(x)));
      const double via_exp = std::exp((n + 1) * std::sqrt(std::log(5.0) * std::log(x)));
      CHECK(via_pow5 == doctest::Approx(via_exp).epsilon(1e-12));
    }
  }
}

TEST_CASE("bounds: empirical Croke constant on the circle") {
  const MetricMeasureSpace s = circle_space(2000);
  const CrokeEstimate est = croke_estimate(s, kPi / 2);
  CHECK(est.provenance == "empirical");
  CHECK(est.beta_n > 1.99);
  CHECK(est.beta_n < 2.01);
  CHECK(est.beta_n == oracle_beta(s, kPi / 2));
  CHECK(est.r_floor == croke_r_floor(s));
  CHECK(est.argmin_point >= 0);
  CHECK(est.argmin_radius > est.r_floor);
  CHECK(s.ball_volume(est.argmin_point, est.argmin_radius) /
            powi(est.argmin_radius, s.dim()) ==
        est.beta_n);
}

TEST_CASE("bounds: empirical Croke constant on sphere and torus") {
  const MetricMeasureSpace sphere = sphere2_space(500);
  const CrokeEstimate se = croke_estimate(sphere, kPi / 2);
  // cap-area ratio 2 pi (1 - cos R)/R^2 is minimized at R = R0 = pi/2: 8/pi
  CHECK(se.beta_n > 2.4);
  CHECK(se.beta_n < 2.7);
  CHECK(se.beta_n == oracle_beta(sphere, kPi / 2));

  const MetricMeasureSpace torus = flat_torus_space(1, 1, 60, 60);
  const CrokeEstimate te = croke_estimate(torus, 0.12);
  CHECK(te.beta_n > 2.9);     // flat discs: ratio ~ pi for all radii
  CHECK(te.beta_n < 3.35);
  CHECK(te.beta_n == oracle_beta(torus, 0.12));

  // multithreaded estimation is exact, not approximately equal
  const CrokeEstimate te4 = croke_estimate(torus, 0.12, 4);
  CHECK(te4.beta_n == te.beta_n);
  CHECK(te4.argmin_point == te.argmin_point);
  CHECK(te4.argmin_radius == te.argmin_radius);
}

TEST_CASE("bounds: Croke estimate input screening") {
  const MetricMeasureSpace s = circle_space(100);
  CHECK_THROWS_WITH_AS(croke_estimate(s, 0.01),
                       doctest::Contains("resolution insufficient"), ResourceError);
  CHECK_THROWS_AS(croke_estimate(s, 2.0), ValidationError);  // above inj/2
  CHECK_THROWS_AS(croke_estimate(s, 0.0), ValidationError);
  CHECK_THROWS_AS(croke_estimate(s, -1.0), ValidationError);
}

TEST_CASE("bounds: user-supplied Croke constant") {
  const MetricMeasureSpace s = circle_space(100);
  const CrokeEstimate u = user_croke(s, 1.25);
  CHECK(u.provenance == "user");
  CHECK(u.beta_n == 1.25);
  CHECK(u.r_floor == croke_r_floor(s));
  CHECK(u.argmin_point == -1);
  CHECK_THROWS_AS(user_croke(s, 0.0), ValidationError);
  CHECK_THROWS_AS(user_croke(s, -3.0), ValidationError);
}

TEST_CASE("bounds: scale index budget") {
  const ScaleBoundReport a = scale_bound_check(scale_packing({0, 0, 0}), 0.0);
  CHECK(a.k_max == 0);
  CHECK(a.ok);
  CHECK_FALSE(a.boundary);

  const ScaleBoundReport b = scale_bound_check(scale_packing({0, 1}), 0.5);
  CHECK(b.k_max == 1);
  CHECK(b.ok);
  CHECK(b.boundary);  // theta < k_max < theta + 1

  const ScaleBoundReport c = scale_bound_check(scale_packing({2, 0}), 0.5);
  CHECK(c.k_max == 2);
  CHECK_FALSE(c.ok);

  const ScaleBoundReport d = scale_bound_check(scale_packing({2}), 2.5);
  CHECK(d.ok);
  CHECK_FALSE(d.boundary);
}

TEST_CASE("bounds: per-dimension inequality verdicts") {
  // rho_hat = 1, n = 1 gives bound_tk = 10 exactly
  const Theorem11Report ok = verify_theorem11(100.0, 1.0, 1, 2.0, {3, 7}, {1, 2});
  REQUIRE(ok.entries.size() == 2);
  CHECK(ok.all_ok);
  CHECK(ok.entries[0].k == 0);
  CHECK(ok.entries[0].b_k == 1);
  CHECK(ok.entries[0].t_k == 3);
  CHECK_FALSE(ok.entries[0].skipped);
  // b_k = 1: literal rhs collapses to Cn itself
  CHECK(ok.entries[0].literal_rhs == explicit_constants(1, 2.0).Cn);
  CHECK(ok.entries[0].literal_le_rho);  // rho = 100 >= 25

  const Theorem11Report skip = verify_theorem11(100.0, 1.0, 1, 2.0, {3, 7}, {1, 0});
  CHECK(skip.entries[1].skipped);
  CHECK(skip.entries[1].ok);
  CHECK(skip.all_ok);

  const Theorem11Report over = verify_theorem11(100.0, 1.0, 1, 2.0, {3, 11}, {1, 2});
  CHECK_FALSE(over.entries[1].ok);  // t_1 = 11 > bound_tk = 10
  CHECK_FALSE(over.all_ok);

  const Theorem11Report rev = verify_theorem11(100.0, 1.0, 1, 2.0, {3, 4}, {1, 5});
  CHECK_FALSE(rev.entries[1].ok);  // b_1 = 5 > t_1 = 4
  CHECK_FALSE(rev.all_ok);

  const Theorem11Report tiny_rho = verify_theorem11(1.0, 1.0, 1, 2.0, {3}, {1});
  CHECK_FALSE(tiny_rho.entries[0].literal_le_rho);  // 25 > 1, informational only
  CHECK(tiny_rho.all_ok);

  CHECK_THROWS_AS(verify_theorem11(1.0, 1.0, 1, 2.0, {3, 7}, {1}), InternalError);
}

TEST_CASE("bounds: report assembly refuses partial pipelines") {
  StageOutputs s;
  CHECK_THROWS_WITH_AS(assemble_report(s), doctest::Contains("missing stage 'space'"),
                       InternalError);

  const MetricMeasureSpace space = circle_space(10);
  s.space = &space;
  CHECK_THROWS_WITH_AS(assemble_report(s), doctest::Contains("missing stage 'croke'"),
                       InternalError);
}
