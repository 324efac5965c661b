#include "embolic/packing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "embolic/errors.hpp"
#include "embolic/mathutil.hpp"
#include "embolic/parallel.hpp"

namespace embolic {

namespace {

constexpr double kRelSlack = 1e-12;  // absorbs fp reassociation noise in sum-vs-sum links
constexpr std::size_t kMaxListedViolations = 16;

inline bool leq_with_slack(double lhs, double rhs) {
  return lhs <= rhs + kRelSlack * std::max(std::fabs(lhs), std::fabs(rhs));
}

}  // namespace

Packing build_packing(const MetricMeasureSpace& space, std::vector<GoodBall> table) {
  if (table.empty()) throw ValidationError("build_packing: empty good-ball table");
  for (const GoodBall& g : table) {
    if (g.center < 0 || g.center >= space.point_count())
      throw ValidationError("build_packing: good-ball center out of range");
    if (!(g.radius > 0.0)) throw ValidationError("build_packing: nonpositive good-ball radius");
  }
  std::sort(table.begin(), table.end(), [](const GoodBall& a, const GoodBall& b) {
    if (a.radius != b.radius) return a.radius > b.radius;
    return a.center < b.center;
  });

  Packing packing;
  for (const GoodBall& g : table) {
    bool disjoint = true;
    for (const GoodBall& s : packing.selected) {
      if (!(space.dist(g.center, s.center) > g.radius + s.radius)) {
        disjoint = false;
        break;
      }
    }
    if (disjoint) packing.selected.push_back(g);
  }

  const PackingCheckReport check = check_packing(space, packing);
  if (!check.ok()) {
    std::string msg = "build_packing: postcondition violated:";
    for (const std::string& f : check.failures) msg += " " + f + ";";
    throw InternalError(msg);
  }
  return packing;
}

PackingCheckReport check_packing(const MetricMeasureSpace& space, const Packing& packing) {
  PackingCheckReport rep;
  const auto& sel = packing.selected;
  for (std::size_t j = 1; j < sel.size(); ++j) {
    if (sel[j].radius > sel[j - 1].radius) {
      rep.radii_sorted_ok = false;
      std::ostringstream os;
      os << "radii increase between positions " << j - 1 << " and " << j;
      rep.failures.push_back(os.str());
      break;
    }
  }
  for (std::size_t i = 0; i + 1 < sel.size() && rep.disjoint_ok; ++i) {
    for (std::size_t j = i + 1; j < sel.size(); ++j) {
      if (!(space.dist(sel[i].center, sel[j].center) > sel[i].radius + sel[j].radius)) {
        rep.disjoint_ok = false;
        std::ostringstream os;
        os << "R-balls " << i << " and " << j << " are not disjoint";
        rep.failures.push_back(os.str());
        break;
      }
    }
  }
  const int m = space.point_count();
  for (int x = 0; x < m; ++x) {
    bool covered = false;
    for (const GoodBall& s : sel) {
      if (space.dist(s.center, x) <= 2.0 * s.radius) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      rep.coverage_ok = false;
      std::ostringstream os;
      os << "sample point " << x << " is not covered by any doubled ball";
      rep.failures.push_back(os.str());
      break;
    }
  }
  return rep;
}

std::vector<std::vector<int>> cover_witness_sets(const MetricMeasureSpace& space,
                                                 const Packing& packing, int threads) {
  const std::size_t m = static_cast<std::size_t>(space.point_count());
  const auto& sel = packing.selected;
  std::vector<std::vector<int>> witness(m);
  parallel_for(m, threads, [&](std::size_t x) {
    std::vector<int>& s = witness[x];
    for (std::size_t j = 0; j < sel.size(); ++j) {
      if (space.dist(sel[j].center, static_cast<int>(x)) <= 2.0 * sel[j].radius)
        s.push_back(static_cast<int>(j));
    }
  });
  return witness;
}

IntersectionTable build_intersection_table(const MetricMeasureSpace& space,
                                           const Packing& packing, int threads) {
  const std::size_t n = static_cast<std::size_t>(packing.N());
  const std::vector<std::vector<int>> witness = cover_witness_sets(space, packing, threads);

  std::vector<char> hit(n * n, 0);  // hit[j*n+i], j < i
  for (const std::vector<int>& s : witness) {
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b)
        hit[static_cast<std::size_t>(s[a]) * n + s[b]] = 1;
  }

  IntersectionTable table;
  table.neighbors.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j + 1; i < n; ++i) {
      if (hit[j * n + i]) {
        table.neighbors[j].push_back(static_cast<int>(i));
        ++table.T;
      }
      const GoodBall& a = packing.selected[j];
      const GoodBall& b = packing.selected[i];
      if (space.dist(a.center, b.center) <= 2.0 * a.radius + 2.0 * b.radius)
        ++table.T_center_distance;
    }
  }
  return table;
}

FiveBallReport five_ball_check(const MetricMeasureSpace& space, const Packing& packing,
                               const IntersectionTable& table) {
  FiveBallReport rep;
  const auto& sel = packing.selected;
  if (table.neighbors.size() != sel.size())
    throw ValidationError("five_ball_check: table does not match packing");
  const int m = space.point_count();
  for (std::size_t j = 0; j < sel.size(); ++j) {
    const GoodBall& big = sel[j];
    for (const int i : table.neighbors[j]) {
      const GoodBall& small = sel[static_cast<std::size_t>(i)];
      ++rep.pairs_checked;
      bool incl_main = true, incl_paper = true;
      const double* row_small = space.row(small.center);
      const double* row_big = space.row(big.center);
      for (int x = 0; x < m; ++x) {
        if (row_small[x] <= small.radius) {
          if (row_big[x] > 5.0 * big.radius) incl_main = false;
          if (row_big[x] > 5.0 * small.radius) incl_paper = false;
        }
      }
      if (!incl_main) {
        rep.ok = false;
        if (rep.violations.size() < kMaxListedViolations)
          rep.violations.push_back({static_cast<long long>(j), static_cast<long long>(i)});
      }
      if (!incl_paper) {
        rep.paper_form_ok = false;
        if (rep.paper_form_violations.size() < kMaxListedViolations)
          rep.paper_form_violations.push_back({static_cast<long long>(j), static_cast<long long>(i)});
      }
    }
    // Disjointness of the smaller R-balls across this neighbor list.
    const std::vector<int>& nb = table.neighbors[j];
    for (std::size_t a = 0; a < nb.size() && rep.neighbors_disjoint_ok; ++a) {
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        const GoodBall& u = sel[static_cast<std::size_t>(nb[a])];
        const GoodBall& v = sel[static_cast<std::size_t>(nb[b])];
        if (!(space.dist(u.center, v.center) > u.radius + v.radius)) {
          rep.neighbors_disjoint_ok = false;
          break;
        }
      }
    }
  }
  return rep;
}

CountingChainReport counting_chain_check(const MetricMeasureSpace& space, const Packing& packing,
                                         const IntersectionTable& table, double alpha,
                                         double beta_n, double r_floor, double R0) {
  if (!(beta_n > 0.0) || !(R0 > 0.0))
    throw ValidationError("counting_chain_check: beta_n and R0 must be positive");
  CountingChainReport rep;
  const auto& sel = packing.selected;
  const int n = space.dim();

  // (a) vol(M) >= sum of selected R-ball volumes; equality means the packing
  // misses no point mass and is flagged, not failed.
  double sum_sel = 0.0;
  for (const GoodBall& g : sel) sum_sel += g.vol_R;
  rep.sum_selected_vol = sum_sel;
  const double vol = space.total_volume();
  rep.a_ok = leq_with_slack(sum_sel, vol);
  rep.a_equality = rep.a_ok && !(sum_sel < vol * (1.0 - kRelSlack));
  if (!rep.a_ok) {
    std::ostringstream os;
    os << "link (a): selected ball volumes sum to " << sum_sel << " > total volume " << vol;
    rep.failures.push_back(os.str());
  }

  for (std::size_t j = 0; j < sel.size(); ++j) {
    const GoodBall& g = sel[j];
    // (b) growth bound at the selected radius.
    if (!leq_with_slack(g.vol_5R, alpha * g.vol_R)) {
      rep.b_ok = false;
      std::ostringstream os;
      os << "link (b): vol(B(p_" << j << ",5R)) = " << g.vol_5R << " > alpha*vol = "
         << alpha * g.vol_R;
      rep.failures.push_back(os.str());
    }
    // (c) neighbor volumes fit inside the 5R ball.
    double nb_sum = 0.0;
    for (const int i : table.neighbors[j]) nb_sum += sel[static_cast<std::size_t>(i)].vol_R;
    if (!leq_with_slack(nb_sum, g.vol_5R)) {
      rep.c_ok = false;
      std::ostringstream os;
      os << "link (c): neighbor volume sum " << nb_sum << " > vol(B(p_" << j << ",5R)) = "
         << g.vol_5R;
      rep.failures.push_back(os.str());
    }
    // (d) Croke-type lower bound at the selected radius. Radii at or below
    // the croke floor are outside the empirical constant's candidate set;
    // note them instead of failing.
    const double ratio = g.vol_R / powi(g.radius, n);
    if (g.radius <= r_floor) {
      ++rep.d_below_floor;
    } else if (!(ratio >= beta_n * (1.0 - kRelSlack))) {
      rep.d_ok = false;
      std::ostringstream os;
      os << "link (d): vol/R^n = " << ratio << " < beta_n = " << beta_n << " at j = " << j;
      rep.failures.push_back(os.str());
    }
  }

  // (e) the concluded bound on the number of pairwise intersections.
  const double rho_hat = vol / (beta_n * powi(R0, n));
  const double s = rho_hat >= 1.0 ? std::sqrt(log5(rho_hat)) : 0.0;
  rep.T_bound = rho_hat * pow5(n + (n + 1) * s);
  rep.e_ok = static_cast<double>(table.T) <= rep.T_bound;
  if (!rep.e_ok) {
    std::ostringstream os;
    os << "link (e): T = " << table.T << " > bound " << rep.T_bound;
    rep.failures.push_back(os.str());
  }
  return rep;
}

}  // namespace embolic
