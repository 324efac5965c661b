#pragma once

#include <string>
#include <vector>

#include "embolic/packing.hpp"

namespace embolic {

/// Simplicial complex with simplices stored per dimension as lex-sorted,
/// strictly increasing vertex tuples. Dimension 0 is stored explicitly as
/// the tuples {0},{1},...,{t_0 - 1}.
struct SimplicialComplex {
  int dmax = 0;
  std::vector<std::vector<std::vector<int>>> simplices;  // [d] -> tuples, d = 0..dmax

  int vertex_count() const {
    return simplices.empty() ? 0 : static_cast<int>(simplices[0].size());
  }
  long long t(int d) const {
    if (d < 0 || d > dmax) return 0;
    return static_cast<long long>(simplices[static_cast<std::size_t>(d)].size());
  }
  std::vector<long long> counts() const {
    std::vector<long long> out;
    for (int d = 0; d <= dmax; ++d) out.push_back(t(d));
    return out;
  }
};

/// Structural validation: per-dimension lex order without duplicates,
/// strictly increasing in-range vertex tuples, vertices exactly 0..t_0-1,
/// and downward closure. Throws ValidationError naming the first offender.
void validate_complex(const SimplicialComplex& complex);

/// Nerve of the doubled-ball cover under witness semantics: one vertex per
/// selected ball, and a d-simplex on {j_0 < ... < j_d} iff some sample point
/// lies in all d+1 doubled balls. Construction inserts every subset of each
/// witness set S(x) of size <= dmax+1. A witness set larger than
/// multiplicity_cap aborts with ResourceError naming the witness point and
/// |S(x)| — the subset enumeration would blow up combinatorially.
struct NerveResult {
  SimplicialComplex complex;
  int max_multiplicity = 0;  // max |S(x)| over sample points
};

NerveResult build_nerve(const MetricMeasureSpace& space, const Packing& packing, int dmax,
                        int multiplicity_cap = 24, int threads = 1);

/// Exact per-dimension counts plus the two recorded observations about them:
/// t_0 <= 2 t_1 (n/a when t_1 = 0) and t_i <= t_1 for all i >= 2. Both are
/// data, never assertions.
struct SimplexCountReport {
  std::vector<long long> t;
  bool claim_t0_le_2t1 = false;
  bool claim_t0_le_2t1_na = true;  // t_1 == 0
  bool claim_ti_le_t1 = true;
  long long max_t_ge2 = 0;  // max of t_i for i >= 2 (0 when none stored)
};

SimplexCountReport simplex_counts(const SimplicialComplex& complex);

/// Complex file format (text): header line "dmax t_0 t_1 ... t_dmax", then
/// one simplex per line as space-separated increasing vertex ids (vertices
/// appear as single-id lines). Lines may come in any order; the reader
/// validates counts, ranges, duplicates and downward closure, reporting the
/// offending line number.
SimplicialComplex read_complex(const std::string& path);
void write_complex(const SimplicialComplex& complex, const std::string& path);
std::string complex_to_string(const SimplicialComplex& complex);

}  // namespace embolic
