#pragma once

#include <optional>
#include <vector>

#include "zernpde/layout.hpp"
#include "zernpde/rat.hpp"
#include "zernpde/regge.hpp"

namespace zernpde {

// Enclosure of a radial coefficient line at fixed angular index m:
// coefficient balls for R^m_{m+2j} (active for j <= D_m) plus tail-error
// norms; tail slot j bounds a remainder whose Zernike series uses only
// modes of band m with degree n >= m + 2j.
struct Radial {
  int m = 0;
  std::vector<Ball> coeffs;    // positions 0..D, inactive slots exactly zero
  std::vector<Radius> tails;   // positions 0..D+1
};

// Enclosure of a function on the disk of fixed angular parity; see the
// Radial invariant for tail slots. Band-error slot b bounds a remainder
// using only angular bands m' >= b.
class Zernike {
 public:
  Zernike() = default;
  Zernike(Layout lay, Parity parity, Rational rho);

  const Layout& layout() const { return layout_; }
  Parity parity() const { return parity_; }
  Rational rho() const { return rho_; }

  Ball coeff(int m, int j) const { return radials_[m].coeffs[j]; }
  void set_coeff(int m, int j, Ball b);
  void add_coeff(int m, int j, Ball b);
  Radius tail(int m, int j) const { return radials_[m].tails[j]; }
  void add_tail(int m, int j, Radius r) { radials_[m].tails[j] += r; }
  Radius band_error(int b) const { return band_errors_[b]; }
  void add_band_error(int b, Radius r) { band_errors_[b] += r; }

  const std::vector<Radial>& radials() const { return radials_; }
  const std::vector<Radius>& band_errors() const { return band_errors_; }

  bool compatible(const Zernike& o) const {
    return layout_ == o.layout_ && parity_ == o.parity_ && rho_ == o.rho_;
  }
  bool has_error_mass() const;

 private:
  Layout layout_;
  Parity parity_ = Parity::even;
  Rational rho_{1, 1};
  std::vector<Radial> radials_;      // bands 0..Size
  std::vector<Radius> band_errors_;  // 0..2*Size
};

// Ball-valued CG product expansions for every pair of coefficient slots,
// precomputed once from the exact table. rem is an upper bound on the
// product-weight mass that falls outside the stored coefficient range.
class ProductTable {
 public:
  ProductTable(const CGTable& cg, Layout lay);

  struct Expansion {
    int m3 = 0;
    int n3_lo = 0;
    int n3_hi_stored = -2;       // largest stored degree, n3_lo-2 if none
    std::vector<Ball> weights;   // C for n3 = n3_lo, n3_lo+2, ...
    double rem_up = 1.0;         // upper bound on 1 - sum(stored C)
  };

  const Layout& layout() const { return layout_; }
  const ModeIndex& modes() const { return modes_; }
  long cg_max_n() const { return cg_max_n_; }

  // Expansion of R^{m1}_{n1} R^{m2}_{n2} on band m1+m2 (mu2 > 0) or
  // |m1-m2| (mu2 < 0). Arguments are full-mode indices of this layout.
  const Expansion& sum_band(int mode_a, int mode_b) const { return fetch(mode_a, mode_b, 0); }
  const Expansion& diff_band(int mode_a, int mode_b) const { return fetch(mode_a, mode_b, 1); }

 private:
  const Expansion& fetch(int a, int b, int kind) const {
    if (a > b) std::swap(a, b);
    return table_[(static_cast<std::size_t>(a) * modes_.count() + b) * 2 + kind];
  }

  Layout layout_;
  ModeIndex modes_;  // parity-agnostic: all (m, j), even enumeration
  long cg_max_n_ = -1;
  std::vector<Expansion> table_;
};

Zernike zero_like(const Zernike& u);
// Enclosure consisting of the single coefficient mode (m, j) with weight c.
Zernike mode_enclosure(Layout lay, Parity p, Rational rho, int m, int j, Ball c);

// Upper bound on the rho-weighted l1 norm, valid for every member.
Radius norm_upper(const Zernike& u);
// Same, counting only error slots.
Radius error_norm_upper(const Zernike& u);

Zernike linear_combine(Ball alpha, const Zernike& u, Ball beta, const Zernike& v);
Zernike scale(Ball alpha, const Zernike& u);
Zernike multiply(const Zernike& u, const Zernike& v, const ProductTable& pt);
Zernike inv_neg_lap(const Zernike& u);
Zernike truncate(const Zernike& u, int N);

// Widen u by an even band-0 error of the given norm radius.
Zernike widen_band0(const Zernike& u, Radius r);

// Lower bound on |a_{m,j}| over all members (0 if undecидable); subtracts
// the error mass that error slots covering the mode could contribute.
double coeff_lower_bound(const Zernike& u, int m, int j);

// Evaluation on the closed disk. The (cos, sin) form takes an exactly known
// point on the unit circle; eval_point reduces theta to it rigorously.
Ball eval_point_cs(const Zernike& u, Ball r, Ball cos_t, Ball sin_t);
Ball eval_point(const Zernike& u, Ball r, Ball theta);

// Enclosures of (cos x, sin x) for a ball argument.
std::pair<Ball, Ball> cos_sin(Ball x);

// True iff every nonzero slot is confined to angular bands that are odd
// multiples of n (then every member is S_n-invariant). Requires even parity.
bool sn_support_check(const Zernike& u, int n);

}  // namespace zernpde
