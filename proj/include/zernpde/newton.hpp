#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zernpde/gmap.hpp"

namespace zernpde {

// Finite-rank operator M acting on coefficient modes of degree < n_trunc,
// zero on everything else. A = I - M is implicit. Entries are Balls so the
// certificate arithmetic stays rigorous regardless of where M came from.
struct NewtonOperator {
  Layout layout;
  Parity parity = Parity::even;
  Rational rho{1, 1};
  int n_trunc = 0;
  ModeIndex trunc_modes;      // coefficient modes with degree < n_trunc
  std::vector<Ball> mat;      // column-major, trunc_modes.count()^2

  NewtonOperator() = default;
  NewtonOperator(Layout lay, Parity p, Rational rho_, int n_trunc_);

  int dim() const { return trunc_modes.count(); }
  Ball at(int row, int col) const { return mat[static_cast<std::size_t>(col) * dim() + row]; }
  Ball& at(int row, int col) { return mat[static_cast<std::size_t>(col) * dim() + row]; }
  bool is_zero() const;

  // Enclosure of M h for every member h of the enclosure (error slots that
  // overlap the truncation range spill into coefficient radii).
  Zernike apply(const Zernike& h) const;
  // Upper bound on the weighted-l1 operator norm of M on the full space.
  Radius op_norm_upper() const;
};

// N(h) = G(ubar + A h) - ubar + M h.
Zernike n_map(const Weight& w, const Zernike& ubar, const NewtonOperator& M, const Zernike& h,
              const ProductTable& pt);

// epsilon = ||N(0)||, the rigorous fixed-point residual of ubar.
Radius epsilon_bound(const Weight& w, const Zernike& ubar, const NewtonOperator& M,
                     const ProductTable& pt);

// Upper bound on sup{ ||DN(h)|| : ||h|| <= delta_cap } in the weighted-l1
// operator norm, computed column-by-column over a mode partition.
Radius dn_norm_bound(const Weight& w, const Zernike& ubar, const NewtonOperator& M,
                     Radius delta_cap, const ProductTable& pt);

// Neumann-series certificate that I - M is invertible.
bool check_I_minus_M_invertible(const NewtonOperator& M, double* residual_out = nullptr);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Witness for the contraction lemma: a true solution u* lies within
// A_norm_delta of ubar in the rho-norm, locally unique.
struct ProofCertificate {
  bool certified = false;
  Radius epsilon, K, delta, A_norm, A_norm_delta;
  bool m_no_eigen_one = false;
  Parity parity = Parity::even;
  std::vector<CheckResult> checks;
  std::string failure;  // first violated inequality, when not certified
};

ProofCertificate contr_fix(const Weight& w, const Zernike& ubar, const NewtonOperator& M,
                           const ProductTable& pt);

struct SymmetryVerdict {
  enum class Kind { no_nontrivial_rotation, invariant_under, inconclusive };
  Kind kind = Kind::inconclusive;
  int n = 0;            // for invariant_under
  int witness_m = 0;    // mode witness for the rotation check
  int witness_j = 0;
  std::string note;
};

// Lemma-4.2 style check on the enclosure of the true solution: some m = 1
// coefficient of u*^2 excludes zero.
SymmetryVerdict min_symm_check(const Zernike& u_star, const ProductTable& pt);

// Lemma-4.3 style sufficient condition: ubar supported on S_n-invariant
// bands and M block-diagonal with respect to that support split.
SymmetryVerdict has_symm_check(const Zernike& ubar, const NewtonOperator& M, int n);

// Enclosure of the true solution from a certificate: ubar widened by the
// certified distance bound.
Zernike solution_enclosure(const Zernike& ubar, const ProofCertificate& cert);

}  // namespace zernpde
