#include "embolic/pipeline.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "embolic/errors.hpp"
#include "embolic/homology.hpp"
#include "embolic/mathutil.hpp"

namespace embolic {

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const ValidationError& e) {
    throw StageError(name, e.what(), kExitValidation);
  } catch (const ResourceError& e) {
    throw StageError(name, e.what(), kExitResource);
  } catch (const InternalError& e) {
    throw StageError(name, e.what(), kExitFailure);
  }
}

}  // namespace

PipelineResult run_pipeline(const MetricMeasureSpace& space, const PipelineOptions& options) {
  stage("validate", [&] {
    const ValidationReport rep = space.validate(options.threads);
    if (!rep.ok) throw ValidationError("space validation failed: " + rep.violations.front());
    return 0;
  });

  const int n = space.dim();

  struct Config {
    double R0;
    std::string r0_policy;
    int dmax;
  };
  const Config cfg = stage("config", [&]() -> Config {
    validate_field(FieldSpec{options.p});
    if (options.multiplicity_cap < 1)
      throw ValidationError("config: multiplicity cap must be >= 1");
    if (options.threads < 1) throw ValidationError("config: threads must be >= 1");
    for (long long v : options.truth)
      if (v < 0) throw ValidationError("config: truth Betti numbers must be nonnegative");

    Config c;
    if (options.r0 > 0.0) {
      if (!std::isfinite(options.r0) || options.r0 > space.inj() / 2.0) {
        std::ostringstream os;
        os << "config: explicit R0 = " << options.r0 << " must lie in (0, inj/2] = (0, "
           << space.inj() / 2.0 << "]";
        throw ValidationError(os.str());
      }
      c.R0 = options.r0;
      c.r0_policy = "user";
    } else {
      c.R0 = space.inj() / 2.0;
      c.r0_policy = "half-inj";
    }
    c.dmax = options.dmax > 0 ? options.dmax : n + 1;
    return c;
  });

  const CrokeEstimate croke = stage("croke", [&] {
    if (options.beta_override > 0.0) return user_croke(space, options.beta_override);
    return croke_estimate(space, cfg.R0, options.threads);
  });

  const double rho_hat = space.total_volume() / (croke.beta_n * powi(cfg.R0, n));

  struct ThetaChoice {
    ThetaResult result;
    std::string policy;
  };
  const ThetaChoice theta = stage("theta", [&]() -> ThetaChoice {
    if (options.theta_override >= 0.0) {
      if (!std::isfinite(options.theta_override))
        throw ValidationError("theta: explicit theta must be finite");
      return {ThetaResult{options.theta_override, false}, "user"};
    }
    return {compute_theta(rho_hat), "paper"};
  });

  GoodBallParams params;
  params.R0 = cfg.R0;
  params.theta = theta.result.theta;
  params.alpha = pow5(static_cast<double>(n) + theta.result.theta);

  const std::vector<GoodBall> table =
      stage("goodballs", [&] { return good_ball_table(space, params, options.threads); });

  const Packing packing = stage("packing", [&] { return build_packing(space, table); });
  const PackingCheckReport packing_check =
      stage("packing", [&] { return check_packing(space, packing); });
  const IntersectionTable intersections =
      stage("packing", [&] { return build_intersection_table(space, packing, options.threads); });
  const FiveBallReport five_ball =
      stage("packing", [&] { return five_ball_check(space, packing, intersections); });

  const NerveResult nerve = stage("nerve", [&] {
    return build_nerve(space, packing, cfg.dmax, options.multiplicity_cap, options.threads);
  });
  const SimplexCountReport counts = simplex_counts(nerve.complex);

  const BettiProfile profile =
      stage("homology", [&] { return betti(nerve.complex, FieldSpec{options.p}); });
  BettiMatchReport match;
  if (options.has_truth) match = betti_match(profile, options.truth);

  struct BoundsOutput {
    CountingChainReport chain;
    ScaleBoundReport scale;
    Theorem13Bound bound;
    ExplicitConstants constants;
    Theorem11Report theorem11;
  };
  const BoundsOutput bounds = stage("bounds", [&]() -> BoundsOutput {
    if (nerve.complex.t(1) != intersections.T) {
      std::ostringstream os;
      os << "nerve/intersection divergence: t_1 = " << nerve.complex.t(1)
         << " but T = " << intersections.T << " from the same witness sets";
      throw InternalError(os.str());
    }
    BoundsOutput out;
    out.chain = counting_chain_check(space, packing, intersections, params.alpha, croke.beta_n,
                                     croke.r_floor, cfg.R0);
    out.scale = scale_bound_check(packing, params.theta);
    out.bound = theorem13_bound(rho_hat, n);
    out.constants = explicit_constants(n, croke.beta_n);
    const double rho = space.total_volume() / powi(space.inj(), n);
    out.theorem11 = verify_theorem11(rho, rho_hat, n, croke.beta_n, counts.t, profile.b);
    return out;
  });

  StageOutputs outs;
  outs.input = options.input_name;
  outs.p = options.p;
  outs.dmax = cfg.dmax;
  outs.multiplicity_cap = options.multiplicity_cap;
  outs.r0_policy = cfg.r0_policy;
  outs.theta_policy = theta.policy;
  outs.truth = options.truth;
  outs.has_truth = options.has_truth;
  outs.space = &space;
  outs.croke = &croke;
  outs.theta = &theta.result;
  outs.params = &params;
  outs.packing = &packing;
  outs.table = &intersections;
  outs.packing_check = &packing_check;
  outs.five_ball = &five_ball;
  outs.chain = &bounds.chain;
  outs.nerve = &nerve;
  outs.counts = &counts;
  outs.betti = &profile;
  outs.betti_match = options.has_truth ? &match : nullptr;
  outs.scale = &bounds.scale;
  outs.bound = &bounds.bound;
  outs.constants = &bounds.constants;
  outs.theorem11 = &bounds.theorem11;

  PipelineResult result;
  result.report = stage("bounds", [&] { return assemble_report(outs); });
  result.complex = nerve.complex;
  result.packing = packing;
  return result;
}

}  // namespace embolic
