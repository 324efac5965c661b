#include <doctest.h>

#include <vector>

#include "embolic/errors.hpp"
#include "embolic/mathutil.hpp"
#include "embolic/pipeline.hpp"
#include "embolic/report_json.hpp"

using namespace embolic;

namespace {

PipelineOptions with_truth(std::vector<long long> truth) {
  PipelineOptions o;
  o.has_truth = true;
  o.truth = std::move(truth);
  return o;
}

}  // namespace

TEST_CASE("pipeline: circle at an eighth turn reproduces the frozen run") {
  const MetricMeasureSpace s = circle_space(2000);
  PipelineOptions o = with_truth({1, 1});
  o.r0 = kPi / 8;
  o.input_name = "circle:2000";
  const PipelineResult r = run_pipeline(s, o);
  const BoundReport& rep = r.report;

  CHECK(rep.input == "circle:2000");
  CHECK(rep.N == 7);
  CHECK(rep.t == std::vector<long long>{7, 7, 0});
  CHECK(rep.b == std::vector<long long>{1, 1, 0});
  CHECK(rep.T == 7);
  CHECK(rep.t1_equals_T);
  CHECK(rep.betti_match_ok);
  CHECK(rep.mandatory_ok);
  CHECK(rep.theta == doctest::Approx(1.135583238668959).epsilon(1e-12));
  CHECK(rep.beta_n == doctest::Approx(2.008).epsilon(1e-6));
  CHECK(rep.r0_policy == "user");
  CHECK(rep.theta_policy == "paper");
  CHECK(rep.beta_n_provenance == "empirical");
  CHECK(rep.dmax == 2);  // n + 1 default
  CHECK(rep.p == 2);
  CHECK(static_cast<double>(rep.T) <= rep.bound_T);
  CHECK(rep.max_multiplicity == 2);
  CHECK(r.complex.counts() == std::vector<long long>{7, 7, 0});
  CHECK(r.packing.N() == 7);

  const std::string json = report_to_json(rep);
  CHECK(json.find("\"t\": [7, 7, 0]") != std::string::npos);
  CHECK(json.find("\"b\": [1, 1, 0]") != std::string::npos);
  CHECK(json.find("\"input\": \"circle:2000\"") != std::string::npos);
  CHECK(json.front() == '{');
  CHECK(json.substr(json.size() - 2) == "}\n");
}

TEST_CASE("pipeline: degenerate half-injectivity circle run misses the loop") {
  // At R0 = inj/2 = pi/2 one doubled ball already covers the whole circle:
  // the nerve is a point and the b_1 = 1 truth cannot match. The run must
  // not throw; the mismatch lands in the report.
  const MetricMeasureSpace s = circle_space(500);
  const PipelineResult r = run_pipeline(s, with_truth({1, 1}));
  const BoundReport& rep = r.report;
  CHECK(rep.r0_policy == "half-inj");
  CHECK(rep.R0 == kPi / 2);
  CHECK(rep.N == 1);
  CHECK(rep.b == std::vector<long long>{1, 0, 0});
  CHECK_FALSE(rep.betti_match_ok);
  CHECK_FALSE(rep.mandatory_ok);
  CHECK(rep.beta_n > 1.99);
  CHECK(rep.beta_n < 2.01);
  // the packing and cover themselves are fine
  CHECK(rep.packing_disjoint_ok);
  CHECK(rep.packing_coverage_ok);
  CHECK(rep.five_ball_ok);
}

TEST_CASE("pipeline: sphere run reproduces the frozen run") {
  const MetricMeasureSpace s = sphere2_space(500);
  PipelineOptions o = with_truth({1, 0, 1});
  o.r0 = 0.7;
  const PipelineResult r = run_pipeline(s, o);
  const BoundReport& rep = r.report;
  CHECK(rep.t == std::vector<long long>{6, 14, 12, 2});
  CHECK(rep.b == std::vector<long long>{1, 0, 1, 0});
  CHECK(rep.betti_match_ok);
  CHECK(rep.mandatory_ok);
  CHECK(rep.five_ball_ok);
  CHECK(rep.chain_a_ok);
  CHECK(rep.chain_b_ok);
  CHECK(rep.chain_c_ok);
  CHECK(rep.chain_d_ok);
  CHECK(rep.chain_e_ok);
  CHECK(rep.dmax == 3);
  CHECK(rep.beta_n == doctest::Approx(2.7775707758071104).epsilon(1e-12));
}

TEST_CASE("pipeline: flat torus reproduces the frozen run") {
  const MetricMeasureSpace s = flat_torus_space(1, 1, 30, 30);
  PipelineOptions o = with_truth({1, 2, 1});
  o.r0 = 0.12;
  const PipelineResult r = run_pipeline(s, o);
  const BoundReport& rep = r.report;
  CHECK(rep.N == 16);
  CHECK(rep.t == std::vector<long long>{16, 83, 101, 34});
  CHECK(rep.b == std::vector<long long>{1, 2, 1, 0});
  CHECK(rep.mandatory_ok);
  CHECK(rep.k_max_scale == 0);
  CHECK(rep.scale_bound_ok);
  CHECK(rep.theta == doctest::Approx(1.4081818278069829).epsilon(1e-12));
  CHECK(rep.claim_t0_le_2t1);  // 16 <= 2*83, recorded not asserted
  CHECK_FALSE(rep.claim_t0_le_2t1_na);
}

TEST_CASE("pipeline: reports are byte-identical across thread counts") {
  const MetricMeasureSpace s = flat_torus_space(1, 1, 30, 30);
  PipelineOptions o = with_truth({1, 2, 1});
  o.r0 = 0.12;
  o.input_name = "flat-torus:1,1,30,30";
  o.threads = 1;
  const PipelineResult one = run_pipeline(s, o);
  o.threads = 8;
  const PipelineResult eight = run_pipeline(s, o);
  CHECK(report_to_json(one.report) == report_to_json(eight.report));
  CHECK(one.complex.simplices == eight.complex.simplices);
}

TEST_CASE("pipeline: stage attribution of failures") {
  const MetricMeasureSpace s = circle_space(200);

  PipelineOptions big;
  big.r0 = 5.0;  // inj/2 = pi/2
  try {
    run_pipeline(s, big);
    FAIL("expected a config StageError");
  } catch (const StageError& e) {
    CHECK(e.stage == "config");
    CHECK(e.exit_code == kExitValidation);
    CHECK(std::string(e.what()).find("must lie in (0, inj/2]") != std::string::npos);
  }

  PipelineOptions tiny;
  tiny.r0 = 0.001;  // below the resolution floor
  try {
    run_pipeline(s, tiny);
    FAIL("expected a croke StageError");
  } catch (const StageError& e) {
    CHECK(e.stage == "croke");
    CHECK(e.exit_code == kExitResource);
    CHECK(std::string(e.what()).find("resolution insufficient") != std::string::npos);
  }

  PipelineOptions badp;
  badp.p = 4;
  try {
    run_pipeline(s, badp);
    FAIL("expected a config StageError");
  } catch (const StageError& e) {
    CHECK(e.stage == "config");
    CHECK(e.exit_code == kExitValidation);
  }

  PipelineOptions cap;
  cap.r0 = kPi / 8;
  cap.multiplicity_cap = 1;
  try {
    run_pipeline(circle_space(1000), cap);
    FAIL("expected a nerve StageError");
  } catch (const StageError& e) {
    CHECK(e.stage == "nerve");
    CHECK(e.exit_code == kExitResource);
    CHECK(std::string(e.what()).find("multiplicity cap exceeded") != std::string::npos);
  }

  // structurally fine but metrically broken: caught by the validate stage
  const MetricMeasureSpace asym(1, 1.0, {1.0, 1.0}, {0.0, 1.0, 2.0, 0.0});
  try {
    run_pipeline(asym, PipelineOptions{});
    FAIL("expected a validate StageError");
  } catch (const StageError& e) {
    CHECK(e.stage == "validate");
    CHECK(e.exit_code == kExitValidation);
  }
}

TEST_CASE("pipeline: manual overrides are recorded with their provenance") {
  const MetricMeasureSpace s = circle_space(400);
  PipelineOptions o;
  o.r0 = kPi / 8;
  o.theta_override = 1.0;
  o.beta_override = 2.0;
  o.p = 3;
  o.dmax = 1;
  const PipelineResult r = run_pipeline(s, o);
  const BoundReport& rep = r.report;
  CHECK(rep.theta_policy == "user");
  CHECK(rep.theta == 1.0);
  CHECK_FALSE(rep.theta_clamped);
  CHECK(rep.beta_n_provenance == "user");
  CHECK(rep.beta_n == 2.0);
  CHECK(rep.alpha == pow5(2.0));  // 5^(n + theta) = 5^2
  CHECK(rep.p == 3);
  CHECK(rep.dmax == 1);
  CHECK(rep.t.size() == 2);
  CHECK_FALSE(rep.has_truth);
  CHECK(rep.betti_match_ok);  // vacuously true without a truth vector
}
