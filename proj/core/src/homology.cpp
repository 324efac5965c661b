#include "embolic/homology.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "embolic/errors.hpp"

namespace embolic {

namespace {

long long mod_pow(long long base, long long exp, long long p) {
  long long r = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) r = r * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return r;
}

long long mod_inv(long long a, long long p) { return mod_pow(a, p - 2, p); }

}  // namespace

void validate_field(const FieldSpec& field) {
  const int p = field.p;
  if (p < 2 || p > 32749)
    throw ValidationError("field: characteristic must lie in [2, 32749]");
  for (int q = 2; static_cast<long long>(q) * q <= p; ++q)
    if (p % q == 0) throw ValidationError("field: characteristic " + std::to_string(p) + " is not prime");
}

int gf2_rank(Gf2Matrix m) {
  const int wpr = m.words_per_row;
  std::uint64_t* data = m.w.data();
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    const int word = c >> 6;
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    int pivot = -1;
    for (int r = rank; r < m.rows; ++r) {
      if (data[static_cast<std::size_t>(r) * wpr + word] & bit) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      std::uint64_t* a = data + static_cast<std::size_t>(pivot) * wpr;
      std::uint64_t* b = data + static_cast<std::size_t>(rank) * wpr;
      for (int k = word; k < wpr; ++k) std::swap(a[k], b[k]);
    }
    const std::uint64_t* prow = data + static_cast<std::size_t>(rank) * wpr;
    for (int r = rank + 1; r < m.rows; ++r) {
      std::uint64_t* row = data + static_cast<std::size_t>(r) * wpr;
      if (row[word] & bit) {
        for (int k = word; k < wpr; ++k) row[k] ^= prow[k];
      }
    }
    ++rank;
  }
  return rank;
}

int fp_rank(FpMatrix m) {
  const long long p = m.p;
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < m.rows; ++r) {
      if (m.at(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int k = c; k < m.cols; ++k) std::swap(m.at(pivot, k), m.at(rank, k));
    }
    const long long inv = mod_inv(m.at(rank, c), p);
    for (int r = rank + 1; r < m.rows; ++r) {
      const long long lead = m.at(r, c);
      if (lead == 0) continue;
      const long long factor = lead * inv % p;
      for (int k = c; k < m.cols; ++k) {
        const long long v = (m.at(r, k) - factor * m.at(rank, k)) % p;
        m.at(r, k) = static_cast<std::int32_t>(v < 0 ? v + p : v);
      }
    }
    ++rank;
  }
  return rank;
}

FpMatrix boundary_matrix(const SimplicialComplex& complex, int d, int p) {
  if (d < 1 || d > complex.dmax)
    throw ValidationError("boundary_matrix: dimension must lie in [1, dmax]");
  validate_field(FieldSpec{p});
  const auto& cols_s = complex.simplices[static_cast<std::size_t>(d)];
  const auto& rows_s = complex.simplices[static_cast<std::size_t>(d) - 1];
  FpMatrix mat(static_cast<int>(rows_s.size()), static_cast<int>(cols_s.size()), p);

  std::vector<int> face(static_cast<std::size_t>(d));
  for (std::size_t c = 0; c < cols_s.size(); ++c) {
    const std::vector<int>& s = cols_s[c];
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      std::size_t w = 0;
      for (std::size_t v = 0; v < s.size(); ++v)
        if (v != drop) face[w++] = s[v];
      const auto it = std::lower_bound(rows_s.begin(), rows_s.end(), face);
      if (it == rows_s.end() || *it != face)
        throw InternalError("boundary_matrix: complex is not downward closed");
      const int r = static_cast<int>(it - rows_s.begin());
      const std::int32_t sign = (drop % 2 == 0) ? 1 : static_cast<std::int32_t>(p - 1);
      mat.at(r, static_cast<int>(c)) = sign;
    }
  }
  return mat;
}

namespace {

int boundary_rank(const SimplicialComplex& complex, int d, int p) {
  if (complex.t(d) == 0 || complex.t(d - 1) == 0) return 0;
  const FpMatrix mat = boundary_matrix(complex, d, p);
  if (p == 2) {
    Gf2Matrix g(mat.rows, mat.cols);
    for (int r = 0; r < mat.rows; ++r)
      for (int c = 0; c < mat.cols; ++c)
        if (mat.at(r, c)) g.set(r, c);
    return gf2_rank(std::move(g));
  }
  return fp_rank(mat);
}

}  // namespace

BettiProfile betti(const SimplicialComplex& complex, FieldSpec field) {
  validate_field(field);
  // rank ∂_d for d = 1..dmax; the truncation treats ∂_{dmax+1} as the zero map.
  std::vector<int> rank(static_cast<std::size_t>(complex.dmax) + 2, 0);
  for (int d = 1; d <= complex.dmax; ++d)
    rank[static_cast<std::size_t>(d)] = boundary_rank(complex, d, field.p);

  BettiProfile profile;
  profile.field = field;
  for (int d = 0; d <= complex.dmax; ++d) {
    const long long b = complex.t(d) - rank[static_cast<std::size_t>(d)] -
                        rank[static_cast<std::size_t>(d) + 1];
    if (b < 0) {
      std::ostringstream os;
      os << "betti: negative b_" << d << " = " << b << " (rank bookkeeping bug)";
      throw InternalError(os.str());
    }
    profile.b.push_back(b);
  }
  return profile;
}

BettiMatchReport betti_match(const BettiProfile& profile, const std::vector<long long>& truth) {
  BettiMatchReport rep;
  rep.computed = profile.b;
  rep.truth = truth;
  const std::size_t shared = std::min(profile.b.size(), truth.size());
  for (std::size_t d = 0; d < shared; ++d) {
    if (profile.b[d] != truth[d]) {
      rep.match = false;
      rep.first_mismatch_dim = static_cast<int>(d);
      return rep;
    }
  }
  for (std::size_t d = shared; d < profile.b.size(); ++d) {
    if (profile.b[d] != 0) {
      rep.match = false;
      rep.first_mismatch_dim = static_cast<int>(d);
      return rep;
    }
  }
  for (std::size_t d = shared; d < truth.size(); ++d) {
    if (truth[d] != 0) {
      rep.match = false;
      rep.first_mismatch_dim = static_cast<int>(d);
      return rep;
    }
  }
  return rep;
}

}  // namespace embolic
