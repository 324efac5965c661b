#include "embolic/space.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "embolic/errors.hpp"
#include "embolic/mathutil.hpp"
#include "embolic/parallel.hpp"

namespace embolic {

MetricMeasureSpace::MetricMeasureSpace(int dim, double inj, std::vector<double> weights,
                                       std::vector<double> dist_row_major,
                                       std::vector<std::string> labels)
    : n_(dim), inj_(inj), w_(std::move(weights)), d_(std::move(dist_row_major)),
      labels_(std::move(labels)) {
  if (w_.empty()) throw ValidationError("space: at least one point required");
  if (w_.size() > static_cast<std::size_t>(std::numeric_limits<int>::max()))
    throw ValidationError("space: too many points");
  m_ = static_cast<int>(w_.size());
  if (n_ < 1) throw ValidationError("space: dim must be a positive integer");
  if (!(inj_ > 0.0) || !std::isfinite(inj_))
    throw ValidationError("space: inj must be positive and finite");
  if (d_.size() != static_cast<std::size_t>(m_) * m_) {
    std::ostringstream os;
    os << "space: distance matrix has " << d_.size() << " entries, expected "
       << static_cast<std::size_t>(m_) * m_;
    throw ValidationError(os.str());
  }
  if (!labels_.empty() && labels_.size() != w_.size())
    throw ValidationError("space: label count does not match point count");
  for (int i = 0; i < m_; ++i) {
    const double w = w_[static_cast<std::size_t>(i)];
    if (!(w > 0.0) || !std::isfinite(w)) {
      std::ostringstream os;
      os << "space: weight[" << i << "] = " << w << " is not strictly positive and finite";
      throw ValidationError(os.str());
    }
  }
  for (std::size_t e = 0; e < d_.size(); ++e) {
    const double v = d_[e];
    if (v < 0.0 || !std::isfinite(v)) {
      std::ostringstream os;
      os << "space: dist[" << e / m_ << "][" << e % m_ << "] = " << v
         << " is negative or not finite";
      throw ValidationError(os.str());
    }
    if (v > diam_) diam_ = v;
  }
  // The canonical ascending fold; every other volume in the pipeline mirrors it.
  for (int i = 0; i < m_; ++i) vol_ += w_[static_cast<std::size_t>(i)];
  if (!std::isfinite(vol_)) throw ValidationError("space: total volume overflows");
}

double MetricMeasureSpace::ball_volume(int p, double R) const {
  if (p < 0 || p >= m_) throw ValidationError("ball_volume: point index out of range");
  const double* r = row(p);
  double s = 0.0;
  for (int x = 0; x < m_; ++x)
    if (r[x] <= R) s += w_[static_cast<std::size_t>(x)];
  return s;
}

int MetricMeasureSpace::ball_count(int p, double R) const {
  if (p < 0 || p >= m_) throw ValidationError("ball_count: point index out of range");
  const double* r = row(p);
  int c = 0;
  for (int x = 0; x < m_; ++x)
    if (r[x] <= R) ++c;
  return c;
}

Ball MetricMeasureSpace::ball(int p, double R) const {
  if (p < 0 || p >= m_) throw ValidationError("ball: point index out of range");
  if (R < 0.0) throw ValidationError("ball: radius must be nonnegative");
  Ball b;
  b.center = p;
  b.radius = R;
  const double* r = row(p);
  for (int x = 0; x < m_; ++x) {
    if (r[x] <= R) {
      b.member_indices.push_back(x);
      b.volume += w_[static_cast<std::size_t>(x)];
    }
  }
  return b;
}

namespace {

// Per-point result slot for the parallel triangle scan.
struct TriangleSlot {
  double defect = -std::numeric_limits<double>::infinity();
  int i = -1, j = -1, k = -1;
};

}  // namespace

ValidationReport MetricMeasureSpace::validate(int threads) const {
  ValidationReport rep;
  rep.tolerance = 1e-9 * diam_;

  // Diagonal, symmetry, sign and finiteness scans.
  long long bad_diag = 0, bad_sym = 0, bad_sign = 0, bad_finite = 0;
  int first_diag = -1;
  int first_sym_i = -1, first_sym_j = -1;
  for (int i = 0; i < m_; ++i) {
    if (dist(i, i) != 0.0) {
      ++bad_diag;
      if (first_diag < 0) first_diag = i;
    }
    const double* ri = row(i);
    for (int j = i + 1; j < m_; ++j) {
      if (ri[j] != dist(j, i)) {
        ++bad_sym;
        if (first_sym_i < 0) { first_sym_i = i; first_sym_j = j; }
      }
      if (ri[j] < 0.0) ++bad_sign;
      if (!std::isfinite(ri[j])) ++bad_finite;
    }
  }
  if (bad_diag > 0) {
    std::ostringstream os;
    os << "nonzero diagonal at " << bad_diag << " point(s), first at index " << first_diag
       << " (dist = " << dist(first_diag, first_diag) << ")";
    rep.violations.push_back(os.str());
  }
  if (bad_sym > 0) {
    std::ostringstream os;
    os << "asymmetric entries at " << bad_sym << " pair(s), first at (" << first_sym_i << ","
       << first_sym_j << ")";
    rep.violations.push_back(os.str());
  }
  if (bad_sign > 0) rep.violations.push_back("negative distances present");
  if (bad_finite > 0) rep.violations.push_back("nonfinite distances present");

  // Triangle inequality. For the unordered pair (i,j) the condition
  // |dist(i,k) - dist(j,k)| <= dist(i,j) + tau over all k covers the two
  // inequalities with i or j on the left; the third one is covered when the
  // other two pairs of the triple are scanned. The max-diff pass is kept
  // branch-light so it vectorizes; the offending k is recovered only for
  // pairs that improve the per-i record.
  std::vector<TriangleSlot> slot(static_cast<std::size_t>(m_));
  const int m = m_;
  parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t iz) {
    const int i = static_cast<int>(iz);
    const double* ri = row(i);
    TriangleSlot best;
    for (int j = i + 1; j < m; ++j) {
      const double* rj = row(j);
      double md = 0.0;
      for (int k = 0; k < m; ++k) {
        const double t = std::fabs(ri[k] - rj[k]);
        if (t > md) md = t;
      }
      const double defect = md - ri[j];
      if (defect > best.defect) {
        // Recover the witness k and the orientation of the violated inequality.
        int argk = -1;
        double cur = -1.0;
        for (int k = 0; k < m; ++k) {
          const double t = std::fabs(ri[k] - rj[k]);
          if (t > cur) { cur = t; argk = k; }
        }
        best.defect = defect;
        best.k = argk;
        if (ri[argk] >= rj[argk]) { best.i = i; best.j = j; }  // dist(i,k) > dist(i,j)+dist(j,k)
        else { best.i = j; best.j = i; }
      }
    }
    slot[iz] = best;
  });
  TriangleSlot worst;
  for (const TriangleSlot& s : slot)
    if (s.defect > worst.defect) worst = s;
  rep.max_triangle_defect = std::max(0.0, worst.defect);
  if (worst.defect > rep.tolerance) {
    rep.worst = TriangleDefect{worst.i, worst.j, worst.k, worst.defect};
    std::ostringstream os;
    os << "triangle inequality violated at (" << worst.i << "," << worst.j << "," << worst.k
       << "): dist(" << worst.i << "," << worst.k << ") exceeds dist(" << worst.i << ","
       << worst.j << ") + dist(" << worst.j << "," << worst.k << ") by " << worst.defect
       << " (tolerance " << rep.tolerance << ")";
    rep.violations.push_back(os.str());
  }

  rep.ok = rep.violations.empty();
  return rep;
}

MetricMeasureSpace circle_space(int m) {
  if (m < 3) throw ValidationError("circle_space: m must be >= 3");
  std::vector<double> w(static_cast<std::size_t>(m), 2.0 * kPi / m);
  std::vector<double> d(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      int k = j - i;
      if (m - k < k) k = m - k;
      const double v = (2.0 * kPi * k) / m;
      d[static_cast<std::size_t>(i) * m + j] = v;
      d[static_cast<std::size_t>(j) * m + i] = v;
    }
  }
  return MetricMeasureSpace(1, kPi, std::move(w), std::move(d));
}

MetricMeasureSpace sphere2_space(int m) {
  if (m < 4) throw ValidationError("sphere2_space: m must be >= 4");
  // Fibonacci lattice with midpoint offsets, so neither pole is hit exactly.
  std::vector<std::array<double, 3>> pts(static_cast<std::size_t>(m));
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < m; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / m;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double t = golden_angle * i;
    pts[static_cast<std::size_t>(i)] = {r * std::cos(t), r * std::sin(t), z};
  }
  std::vector<double> w(static_cast<std::size_t>(m), 4.0 * kPi / m);
  std::vector<double> d(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    const auto& a = pts[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j) {
      const auto& b = pts[static_cast<std::size_t>(j)];
      double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
      dot = std::clamp(dot, -1.0, 1.0);
      const double v = std::acos(dot);
      d[static_cast<std::size_t>(i) * m + j] = v;
      d[static_cast<std::size_t>(j) * m + i] = v;
    }
  }
  return MetricMeasureSpace(2, kPi, std::move(w), std::move(d));
}

MetricMeasureSpace flat_torus_space(double a, double b, int m1, int m2) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw ValidationError("flat_torus_space: side lengths must be positive and finite");
  if (m1 < 3 || m2 < 3) throw ValidationError("flat_torus_space: m1 and m2 must be >= 3");
  const int m = m1 * m2;
  // Wraparound offsets along each axis, tabulated once.
  std::vector<double> dx(static_cast<std::size_t>(m1)), dy(static_cast<std::size_t>(m2));
  for (int k = 0; k < m1; ++k) dx[static_cast<std::size_t>(k)] = (a * std::min(k, m1 - k)) / m1;
  for (int k = 0; k < m2; ++k) dy[static_cast<std::size_t>(k)] = (b * std::min(k, m2 - k)) / m2;

  std::vector<double> w(static_cast<std::size_t>(m), (a * b) / (static_cast<double>(m1) * m2));
  std::vector<double> d(static_cast<std::size_t>(m) * m, 0.0);
  for (int p = 0; p < m; ++p) {
    const int i1 = p / m2, i2 = p % m2;
    for (int q = p + 1; q < m; ++q) {
      const int j1 = q / m2, j2 = q % m2;
      const double ddx = dx[static_cast<std::size_t>(std::abs(i1 - j1))];
      const double ddy = dy[static_cast<std::size_t>(std::abs(i2 - j2))];
      const double v = std::sqrt(ddx * ddx + ddy * ddy);
      d[static_cast<std::size_t>(p) * m + q] = v;
      d[static_cast<std::size_t>(q) * m + p] = v;
    }
  }
  return MetricMeasureSpace(2, std::min(a, b) / 2.0, std::move(w), std::move(d));
}

MetricMeasureSpace disjoint_union(const std::vector<MetricMeasureSpace>& parts,
                                  double separation) {
  if (parts.empty()) throw ValidationError("disjoint_union: at least one component required");
  const int n = parts.front().dim();
  std::size_t total = 0;
  double max_diam = 0.0;
  double inj = parts.front().inj();
  for (const auto& part : parts) {
    if (part.dim() != n)
      throw ValidationError("disjoint_union: components must share the same dim");
    total += static_cast<std::size_t>(part.point_count());
    max_diam = std::max(max_diam, part.diameter());
    inj = std::min(inj, part.inj());
  }
  if (!(separation > 2.0 * max_diam) || !std::isfinite(separation)) {
    std::ostringstream os;
    os << "disjoint_union: separation " << separation
       << " must exceed twice the largest component diameter (" << 2.0 * max_diam << ")";
    throw ValidationError(os.str());
  }

  std::vector<double> w;
  w.reserve(total);
  std::vector<double> d(total * total, separation);
  std::size_t off = 0;
  for (const auto& part : parts) {
    const std::size_t k = static_cast<std::size_t>(part.point_count());
    for (std::size_t i = 0; i < k; ++i) {
      w.push_back(part.weight(static_cast<int>(i)));
      const double* src = part.row(static_cast<int>(i));
      double* dst = d.data() + (off + i) * total + off;
      std::copy(src, src + k, dst);
    }
    off += k;
  }
  return MetricMeasureSpace(n, inj, std::move(w), std::move(d));
}

}  // namespace embolic
