#pragma once

#include <cstdint>
#include <vector>

#include "embolic/nerve.hpp"

namespace embolic {

/// Coefficient field F_p. p must be prime (checked by validate_field);
/// the default is 2.
struct FieldSpec {
  int p = 2;
};

/// Throws ValidationError unless 2 <= p <= 32749 and p is prime.
void validate_field(const FieldSpec& field);

struct BettiProfile {
  std::vector<long long> b;  // b_0..b_dmax
  FieldSpec field;
};

/// Dense matrix over F_p, entries stored reduced (0 <= a < p), row-major.
struct FpMatrix {
  int rows = 0, cols = 0, p = 2;
  std::vector<std::int32_t> a;

  FpMatrix() = default;
  FpMatrix(int r, int c, int p_) : rows(r), cols(c), p(p_), a(static_cast<std::size_t>(r) * c, 0) {}
  std::int32_t& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  std::int32_t at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

/// Bit-packed GF(2) matrix: one row is ceil(cols/64) little-endian words.
struct Gf2Matrix {
  int rows = 0, cols = 0, words_per_row = 0;
  std::vector<std::uint64_t> w;

  Gf2Matrix() = default;
  Gf2Matrix(int r, int c)
      : rows(r), cols(c), words_per_row(c == 0 ? 0 : (c + 63) / 64),
        w(static_cast<std::size_t>(r) * static_cast<std::size_t>(words_per_row), 0) {}
  void set(int r, int c) {
    w[static_cast<std::size_t>(r) * words_per_row + (c >> 6)] |= std::uint64_t{1} << (c & 63);
  }
  bool get(int r, int c) const {
    return (w[static_cast<std::size_t>(r) * words_per_row + (c >> 6)] >> (c & 63)) & 1;
  }
};

/// Rank by XOR row elimination on the packed words (the performance kernel
/// behind every F_2 Betti computation). Takes its argument by value: the
/// elimination is in-place on the copy.
int gf2_rank(Gf2Matrix m);

/// Rank by modular Gaussian elimination for general (small) primes.
int fp_rank(FpMatrix m);

/// Boundary operator ∂_d: rows indexed by the (d-1)-simplices, columns by
/// the d-simplices, both in lex order; the entry for the face obtained by
/// deleting the i-th vertex is (-1)^i mod p. Requires 1 <= d <= dmax.
FpMatrix boundary_matrix(const SimplicialComplex& complex, int d, int p = 2);

/// b_d = t_d - rank ∂_d - rank ∂_{d+1}, with rank ∂_0 = 0 and
/// rank ∂_{dmax+1} = 0 (the complex is truncated at dmax). Exact arithmetic
/// over F_p throughout; p = 2 uses the bit-packed path.
BettiProfile betti(const SimplicialComplex& complex, FieldSpec field = {});

/// Componentwise comparison up to the shorter length; all trailing entries
/// of either side beyond that length must be zero.
struct BettiMatchReport {
  bool match = true;
  int first_mismatch_dim = -1;
  std::vector<long long> computed, truth;
};

BettiMatchReport betti_match(const BettiProfile& profile, const std::vector<long long>& truth);

}  // namespace embolic
