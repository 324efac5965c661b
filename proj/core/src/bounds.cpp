#include "embolic/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "embolic/errors.hpp"
#include "embolic/mathutil.hpp"
#include "embolic/parallel.hpp"

namespace embolic {

double croke_r_floor(const MetricMeasureSpace& space) {
  const int m = space.point_count();
  if (m <= 1) return 0.0;
  double max_nn = 0.0;
  for (int p = 0; p < m; ++p) {
    const double* row = space.row(p);
    double nn = std::numeric_limits<double>::infinity();
    for (int q = 0; q < m; ++q)
      if (q != p && row[q] < nn) nn = row[q];
    if (nn > max_nn) max_nn = nn;
  }
  return 3.0 * max_nn;
}

namespace {

struct CrokeSlot {
  double ratio = std::numeric_limits<double>::infinity();
  double radius = 0.0;
};

}  // namespace

CrokeEstimate croke_estimate(const MetricMeasureSpace& space, double R0, int threads) {
  if (!(R0 > 0.0) || !std::isfinite(R0))
    throw ValidationError("croke: R0 must be positive and finite");
  if (R0 > space.inj() / 2.0)
    throw ValidationError("croke: R0 exceeds inj/2");

  const double r_floor = croke_r_floor(space);
  if (!(R0 > r_floor)) {
    std::ostringstream os;
    os << "croke: resolution insufficient: R0 = " << R0 << " does not exceed r_floor = "
       << r_floor << " (3x the max nearest-neighbor spacing)";
    throw ResourceError(os.str());
  }

  const int m = space.point_count();
  const int n = space.dim();
  std::vector<CrokeSlot> slots(static_cast<std::size_t>(m));

  parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t pi) {
    const int p = static_cast<int>(pi);
    const double* row = space.row(p);
    std::vector<double> cands;
    cands.reserve(static_cast<std::size_t>(m) + 1);
    for (int q = 0; q < m; ++q)
      if (row[q] > r_floor && row[q] <= R0) cands.push_back(row[q]);
    cands.push_back(R0);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    CrokeSlot best;
    for (double R : cands) {
      const double ratio = space.ball_volume(p, R) / powi(R, n);
      if (ratio < best.ratio) {
        best.ratio = ratio;
        best.radius = R;
      }
    }
    slots[pi] = best;
  });

  CrokeEstimate est;
  est.r_floor = r_floor;
  est.provenance = "empirical";
  est.beta_n = std::numeric_limits<double>::infinity();
  for (int p = 0; p < m; ++p) {
    if (slots[static_cast<std::size_t>(p)].ratio < est.beta_n) {
      est.beta_n = slots[static_cast<std::size_t>(p)].ratio;
      est.argmin_point = p;
      est.argmin_radius = slots[static_cast<std::size_t>(p)].radius;
    }
  }
  return est;
}

CrokeEstimate user_croke(const MetricMeasureSpace& space, double beta_n) {
  if (!(beta_n > 0.0) || !std::isfinite(beta_n))
    throw ValidationError("croke: user beta_n must be positive and finite");
  CrokeEstimate est;
  est.beta_n = beta_n;
  est.r_floor = croke_r_floor(space);
  est.provenance = "user";
  return est;
}

ThetaResult compute_theta(double rho_hat) {
  if (!(rho_hat > 0.0) || !std::isfinite(rho_hat))
    throw ValidationError("theta: rho_hat must be positive and finite");
  ThetaResult r;
  if (rho_hat < 1.0) {
    r.theta = 0.0;
    r.clamped = true;
  } else {
    r.theta = std::sqrt(log5(rho_hat));
  }
  return r;
}

ScaleBoundReport scale_bound_check(const Packing& packing, double theta) {
  ScaleBoundReport rep;
  rep.theta = theta;
  for (const GoodBall& g : packing.selected)
    if (g.scale_index > rep.k_max) rep.k_max = g.scale_index;
  rep.ok = rep.k_max < theta + 1.0;
  rep.boundary = rep.ok && rep.k_max > theta;
  return rep;
}

Theorem13Bound theorem13_bound(double rho_hat, int n) {
  if (!(rho_hat > 0.0) || !std::isfinite(rho_hat))
    throw ValidationError("bound: rho_hat must be positive and finite");
  if (n < 1) throw ValidationError("bound: n must be a positive integer");
  Theorem13Bound b;
  double s = 0.0;
  if (rho_hat >= 1.0) {
    s = std::sqrt(log5(rho_hat));
  } else {
    b.clamped = true;
  }
  b.bound_T = rho_hat * pow5(static_cast<double>(n) + (n + 1) * s);
  b.bound_tk = 2.0 * b.bound_T;
  return b;
}

ExplicitConstants explicit_constants(int n, double beta_n) {
  if (n < 1) throw ValidationError("constants: n must be a positive integer");
  if (!(beta_n > 0.0) || !std::isfinite(beta_n))
    throw ValidationError("constants: beta_n must be positive and finite");
  ExplicitConstants c;
  const double x = std::ldexp(1.0, n) / beta_n;  // 2^n / beta_n
  double s = 0.0;
  if (x >= 1.0) {
    s = std::sqrt(log5(x));
  } else {
    c.clamped = true;
  }
  c.Cn = x * pow5(2.0 * n + (n + 1) * s);
  c.Cnprime = (n + 1) * std::sqrt(std::log(5.0));
  c.Dn = 2.0 * c.Cn;
  c.Dnprime = c.Cnprime;
  return c;
}

Theorem11Report verify_theorem11(double rho, double rho_hat, int n, double beta_n,
                                 const std::vector<long long>& t,
                                 const std::vector<long long>& b) {
  if (t.size() != b.size())
    throw InternalError("theorem11: simplex-count and Betti vectors disagree in length");
  const Theorem13Bound bound = theorem13_bound(rho_hat, n);
  const ExplicitConstants c = explicit_constants(n, beta_n);

  Theorem11Report rep;
  for (std::size_t k = 0; k < b.size(); ++k) {
    TheoremEntry e;
    e.k = static_cast<int>(k);
    e.b_k = b[k];
    e.t_k = t[k];
    if (b[k] == 0) {
      e.skipped = true;
    } else {
      e.ok = b[k] <= t[k] && static_cast<double>(t[k]) <= bound.bound_tk;
      const double lg = std::log(static_cast<double>(b[k]));  // b_k = 1 -> exp(0) = 1
      e.literal_rhs = c.Cn * static_cast<double>(b[k]) / std::exp(c.Cnprime * std::sqrt(lg));
      e.literal_le_rho = e.literal_rhs <= rho;
      if (!e.ok) rep.all_ok = false;
    }
    rep.entries.push_back(e);
  }
  return rep;
}

namespace {

void require_stage(const void* ptr, const char* stage) {
  if (ptr == nullptr)
    throw InternalError(std::string("assemble_report: missing stage '") + stage + "'");
}

}  // namespace

BoundReport assemble_report(const StageOutputs& s) {
  require_stage(s.space, "space");
  require_stage(s.croke, "croke");
  require_stage(s.theta, "theta");
  require_stage(s.params, "goodballs");
  require_stage(s.packing, "packing");
  require_stage(s.table, "intersections");
  require_stage(s.packing_check, "packing-check");
  require_stage(s.five_ball, "five-ball");
  require_stage(s.chain, "counting-chain");
  require_stage(s.nerve, "nerve");
  require_stage(s.counts, "simplex-counts");
  require_stage(s.betti, "homology");
  require_stage(s.scale, "scale-bound");
  require_stage(s.bound, "theorem13");
  require_stage(s.constants, "constants");
  require_stage(s.theorem11, "theorem11");
  if (s.has_truth) require_stage(s.betti_match, "betti-match");

  BoundReport r;
  r.input = s.input;
  r.m = s.space->point_count();
  r.n = s.space->dim();
  r.inj = s.space->inj();
  r.vol = s.space->total_volume();
  r.p = s.p;
  r.dmax = s.dmax;
  r.multiplicity_cap = s.multiplicity_cap;
  r.r0_policy = s.r0_policy;
  r.R0 = s.params->R0;
  r.theta_policy = s.theta_policy;
  r.theta = s.params->theta;
  r.theta_clamped = s.theta->clamped;
  r.alpha = s.params->alpha;
  r.beta_n = s.croke->beta_n;
  r.beta_n_provenance = s.croke->provenance;
  r.r_floor = s.croke->r_floor;
  r.rho = r.vol / powi(r.inj, r.n);
  r.rho_hat = r.vol / (r.beta_n * powi(r.R0, r.n));
  r.N = s.packing->N();
  r.k_max_scale = s.scale->k_max;
  r.T = s.table->T;
  r.T_center_distance = s.table->T_center_distance;
  r.max_multiplicity = s.nerve->max_multiplicity;
  r.t = s.counts->t;
  r.b = s.betti->b;
  r.truth = s.truth;
  r.has_truth = s.has_truth;
  r.betti_match_ok = s.has_truth ? s.betti_match->match : true;
  r.bound_T = s.bound->bound_T;
  r.bound_tk = s.bound->bound_tk;
  r.bound_clamped = s.bound->clamped;
  r.Cn = s.constants->Cn;
  r.Cnprime = s.constants->Cnprime;
  r.Dn = s.constants->Dn;
  r.Dnprime = s.constants->Dnprime;
  r.Cn_clamped = s.constants->clamped;
  r.packing_radii_sorted_ok = s.packing_check->radii_sorted_ok;
  r.packing_disjoint_ok = s.packing_check->disjoint_ok;
  r.packing_coverage_ok = s.packing_check->coverage_ok;
  r.five_ball_ok = s.five_ball->ok;
  r.five_ball_paper_form_ok = s.five_ball->paper_form_ok;
  r.five_ball_neighbors_disjoint_ok = s.five_ball->neighbors_disjoint_ok;
  r.chain_a_ok = s.chain->a_ok;
  r.chain_a_equality = s.chain->a_equality;
  r.chain_b_ok = s.chain->b_ok;
  r.chain_c_ok = s.chain->c_ok;
  r.chain_d_ok = s.chain->d_ok;
  r.chain_d_below_floor = s.chain->d_below_floor;
  r.chain_e_ok = s.chain->e_ok;
  r.scale_bound_ok = s.scale->ok;
  r.scale_bound_boundary = s.scale->boundary;
  r.t1_equals_T = s.nerve->complex.t(1) == s.table->T;

  r.bk_le_tk_ok = true;
  r.tk_le_bound_ok = true;
  for (const TheoremEntry& e : s.theorem11->entries) {
    r.main_inequality_ok.push_back(e.skipped ? true : e.ok);
    r.main_inequality_skipped.push_back(e.skipped);
    r.theorem11_literal_rhs.push_back(e.literal_rhs);
  }
  for (std::size_t k = 0; k < r.t.size(); ++k) {
    if (r.b[k] > r.t[k]) r.bk_le_tk_ok = false;
    if (static_cast<double>(r.t[k]) > r.bound_tk) r.tk_le_bound_ok = false;
  }

  r.claim_t0_le_2t1 = s.counts->claim_t0_le_2t1;
  r.claim_t0_le_2t1_na = s.counts->claim_t0_le_2t1_na;
  r.claim_ti_le_t1 = s.counts->claim_ti_le_t1;

  r.mandatory_ok = r.packing_radii_sorted_ok && r.packing_disjoint_ok && r.packing_coverage_ok &&
                   r.five_ball_ok && r.chain_a_ok && r.chain_b_ok && r.chain_c_ok &&
                   r.chain_d_ok && r.chain_e_ok && r.bk_le_tk_ok && r.tk_le_bound_ok &&
                   r.betti_match_ok;

  for (const GoodBall& g : s.packing->selected) {
    PackingEntry e;
    e.center = g.center;
    e.radius = g.radius;
    e.scale_index = g.scale_index;
    e.vol_R = g.vol_R;
    e.vol_5R = g.vol_5R;
    r.packing.push_back(e);
  }
  return r;
}

}  // namespace embolic
