#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace embolic {

/// Closed metric ball around a sample point.
struct Ball {
  int center = 0;
  double radius = 0.0;
  std::vector<int> member_indices;  // ascending; always contains center
  double volume = 0.0;              // weight sum over members, ascending fold
};

/// Worst triangle-inequality offender found by validate():
/// dist(i,k) > dist(i,j) + dist(j,k) with the given defect.
struct TriangleDefect {
  int i = -1, j = -1, k = -1;
  double defect = 0.0;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
  double tolerance = 0.0;            // tau = 1e-9 * diameter
  double max_triangle_defect = 0.0;  // largest defect seen (may be <= tau)
  TriangleDefect worst;              // populated when the triangle check fails
};

/// Finite metric-measure space: a dense symmetric geodesic-distance matrix,
/// per-point volume weights (units of length^dim), the intrinsic manifold
/// dimension, and the injectivity radius of the underlying manifold.
///
/// Immutable after construction; every query is a pure function and safe to
/// call concurrently. All volume sums anywhere in the pipeline go through
/// ball_volume()/total_volume()'s ascending-index fold, which keeps results
/// bit-identical across runs and thread counts.
class MetricMeasureSpace {
 public:
  /// Throws ValidationError on structural problems: empty weight list,
  /// dist size != m*m, nonpositive/nonfinite weights or inj, negative or
  /// nonfinite distances, dim < 1.
  MetricMeasureSpace(int dim, double inj, std::vector<double> weights,
                     std::vector<double> dist_row_major,
                     std::vector<std::string> labels = {});

  int point_count() const { return m_; }
  int dim() const { return n_; }
  double inj() const { return inj_; }
  double total_volume() const { return vol_; }
  double diameter() const { return diam_; }

  double dist(int i, int j) const { return d_[static_cast<std::size_t>(i) * m_ + j]; }
  const double* row(int i) const { return d_.data() + static_cast<std::size_t>(i) * m_; }
  double weight(int i) const { return w_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& weights() const { return w_; }
  const std::vector<double>& dist_matrix() const { return d_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Weight sum over the closed ball {x : dist(p,x) <= R}, accumulated in
  /// ascending point order (the shared deterministic fold).
  double ball_volume(int p, double R) const;
  int ball_count(int p, double R) const;
  Ball ball(int p, double R) const;

  /// Metric-axiom report: zero diagonal, exact symmetry, nonnegativity,
  /// finiteness, and the triangle inequality within tau = 1e-9 * diameter.
  /// Report-style: never throws; pipeline entry points reject spaces whose
  /// report fails.
  ValidationReport validate(int threads = 1) const;

 private:
  int m_ = 0, n_ = 0;
  double inj_ = 0.0;
  std::vector<double> w_, d_;
  std::vector<std::string> labels_;
  double vol_ = 0.0, diam_ = 0.0;
};

// Ground-truth generators. Weights are normalized so the total volume equals
// the Riemannian volume of the underlying manifold (2*pi, 4*pi, a*b), making
// vol/inj^n directly comparable to closed-form values.

/// m >= 3 uniform points on the unit circle; arc-length metric, inj = pi,
/// Betti ground truth (1,1).
MetricMeasureSpace circle_space(int m);

/// m >= 4 Fibonacci-lattice points on the unit 2-sphere; great-circle metric
/// dist = arccos(x.y) with the dot product clamped to [-1,1]; inj = pi,
/// Betti ground truth (1,0,1).
MetricMeasureSpace sphere2_space(int m);

/// m1 x m2 grid on R^2/(aZ x bZ) with the flat quotient metric;
/// inj = min(a,b)/2, Betti ground truth (1,2,1).
MetricMeasureSpace flat_torus_space(double a, double b, int m1, int m2);

/// Block-diagonal union: cross-component distances all equal `separation`,
/// which must exceed twice the largest component diameter (otherwise the
/// triangle inequality breaks across components). All components must share
/// dim; inj is the minimum over components; Betti numbers add componentwise.
MetricMeasureSpace disjoint_union(const std::vector<MetricMeasureSpace>& parts,
                                  double separation);

}  // namespace embolic
