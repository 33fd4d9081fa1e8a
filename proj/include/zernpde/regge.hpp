#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "zernpde/rat.hpp"

namespace zernpde {

// 3x3 integer matrix presentation of a Clebsch-Gordan / 3j coefficient.
// Row and column sums all equal J when the symbol can be nonzero.
struct ReggeMatrix {
  std::array<std::array<long, 3>, 3> e{};

  long& operator()(int i, int j) { return e[i][j]; }
  long operator()(int i, int j) const { return e[i][j]; }

  bool valid() const;
  long row_col_sum() const { return e[0][0] + e[0][1] + e[0][2]; }  // J, when valid

  // Regge symbol of the CG coefficient <nu1 mu1 nu2 mu2 | nu3 mu3> with
  // nu_j = n_j/2, mu_j = m_j/2 and m3 = m1 + m2. Requires n_j = m_j (mod 2).
  static ReggeMatrix from_zernike_modes(long n1, long m1, long n2, long m2, long n3);

  bool operator==(const ReggeMatrix& o) const { return e == o.e; }
};

// Normal form of Eq-style canonical matrix
//   [ S      L      X+B-T ]
//   [ X      B      S+L-T ]
//   [ L+B-T  S+X-T  T     ]
// with L >= X >= T >= B >= S >= 0 and 2T <= L+S.
struct CanonicalRegge {
  long L = 0, S = 0, T = 0, X = 0, B = 0;

  bool satisfies_constraints() const {
    return L >= X && X >= T && T >= B && B >= S && S >= 0 && 2 * T <= L + S;
  }
  ReggeMatrix expand() const;
  bool operator==(const CanonicalRegge& o) const {
    return L == o.L && S == o.S && T == o.T && X == o.X && B == o.B;
  }
  bool operator<(const CanonicalRegge& o) const {
    if (L != o.L) return L < o.L;
    if (S != o.S) return S < o.S;
    if (T != o.T) return T < o.T;
    if (X != o.X) return X < o.X;
    return B < o.B;
  }
};

// Exact signed square root carrier: denotes sign * sqrt(num/den), with
// num/den >= 0 in lowest terms. The squared value is num/den.
struct ExactSquare {
  int sign = +1;  // +1 or -1; zero is {+1, 0, 1}
  mpz_class num = 0;
  mpz_class den = 1;

  bool is_zero() const { return num == 0; }
  mpq_class squared() const { return mpq_class(num, den); }
  ExactSquare negated() const { return {-sign, num, den}; }
  bool same_value(const ExactSquare& o) const {
    if (is_zero() && o.is_zero()) return true;
    return sign == o.sign && num == o.num && den == o.den;
  }
};

// (canonical form, sign exponent): the symbol of r equals
// (-1)^(J * sign_exponent) times the symbol of the canonical matrix.
std::pair<CanonicalRegge, int> normal_form(const ReggeMatrix& r);

// Exact signed square of the Regge symbol (RBMW sum over prime-factorized
// factorials). Invalid matrices give exact zero.
ExactSquare value_squared(const ReggeMatrix& r);

// Squared Clebsch-Gordan product weight C^{m1,m2,m3}_{n1,n2,n3} of the
// Zernike product rule, m3 = m1 + m2. Nonnegative; zero outside the support.
ExactSquare cg_squared(long n1, long m1, long n2, long m2, long n3);

// Lexicographic enumeration order and closed-form tail for the canonical set
// S = {(l,s,t,x,b) : l >= x >= t >= b >= s >= 0, 2t <= l+s}.
class ReggeIndexer {
 public:
  ReggeIndexer() = default;
  explicit ReggeIndexer(long max_l);

  long max_l() const { return max_l_; }
  std::uint64_t set_size() const { return total_; }
  // 1-based rank of c in the lexicographic enumeration of S.
  std::uint64_t index(const CanonicalRegge& c) const;

 private:
  long max_l_ = -1;
  std::uint64_t total_ = 0;
  std::vector<std::uint64_t> prefix_;  // (l,s,t) -> #tuples lexicographically before block
  std::uint64_t& at(long l, long s, long t) { return prefix_[(std::size_t(l) * (max_l_ + 1) + s) * (max_l_ + 1) + t]; }
  std::uint64_t at(long l, long s, long t) const { return prefix_[(std::size_t(l) * (max_l_ + 1) + s) * (max_l_ + 1) + t]; }
};

// Precomputed table of exact squared CG values, keyed by the canonical index.
// Serves every query with factor degrees n1, n2 <= max_n.
class CGTable {
 public:
  CGTable() = default;
  static CGTable build(long max_n);

  long max_n() const { return max_n_; }
  const ReggeIndexer& indexer() const { return indexer_; }
  std::size_t stored_count() const { return values_.size(); }

  // Exact product weight; throws if the query is outside the served range.
  ExactSquare cg(long n1, long m1, long n2, long m2, long n3) const;
  // Signed symbol square for any valid matrix within range.
  ExactSquare symbol(const ReggeMatrix& r) const;
  const ExactSquare* find_index(std::uint64_t idx) const;

  void save(const std::string& path) const;
  static CGTable load(const std::string& path);
  // Build, using `path` as a cache keyed by max_n and format version.
  static CGTable build_cached(long max_n, const std::string& path);

 private:
  long max_n_ = -1;
  ReggeIndexer indexer_;
  std::unordered_map<std::uint64_t, ExactSquare> values_;
};

std::string describe(const CanonicalRegge& c);
std::string describe(const ExactSquare& v);

}  // namespace zernpde
