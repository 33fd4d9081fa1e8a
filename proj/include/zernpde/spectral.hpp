#pragma once

#include <functional>

#include "zernpde/gmap.hpp"

namespace zernpde {

// Partition of the parity subspace into coefficient modes below N_part,
// per-band residual subspaces, and one overflow group for bands > Size.
struct ModePartition {
  struct Group {
    ModeRef ref;      // coefficient(m,j) | radial_tail(m,j_start) | band_error(b)
    int min_degree;   // smallest Zernike degree the group can contain
  };

  Layout layout;
  Parity parity = Parity::even;
  int n_part = 0;
  std::vector<Group> groups;

  int count() const { return static_cast<int>(groups.size()); }
};

ModePartition build_partition(Layout lay, int n_part, Parity parity, Rational rho);

// Unit ball of one partition group as an enclosure.
Zernike unit_enclosure(const ModePartition& p, int group, Rational rho);

// Per-group norm bounds of an output enclosure. An error slot overlapping
// several groups is charged to each (its mass may concentrate anywhere).
std::vector<double> extract_group_norms(const ModePartition& p, const Zernike& out);

// Matrix of nonnegative bounds: entry (i,j) bounds the Z_i-component norm of
// the image of any unit vector of Z_j, for every member operator.
struct OperatorEnclosure {
  ModePartition partition;
  std::vector<double> entries;  // row-major count x count

  int count() const { return partition.count(); }
  double at(int i, int j) const { return entries[static_cast<std::size_t>(i) * count() + j]; }
  double& at(int i, int j) { return entries[static_cast<std::size_t>(i) * count() + j]; }
};

using ApplyFn = std::function<Zernike(const Zernike&)>;

OperatorEnclosure enclose_operator(const ApplyFn& apply, const ModePartition& p, Rational rho);

// Weighted-l1 operator norm bound: max column sum.
Radius op_norm(const OperatorEnclosure& L);

// Upper bound on the spectral radius via k rounds of matrix squaring:
// op_norm(L^(2^k))^(2^-k), all arithmetic rounded outward.
Radius spectral_radius_bound(const OperatorEnclosure& L, int k);

// Approximate eigenpairs with exact preimages: v_j = (-Lap)^{-1} g_j by
// construction, so every H1 pairing against v_j reduces to an L2 pairing
// against g_j.
struct EigenData {
  Parity parity = Parity::even;
  std::vector<Ball> values;        // lambda_j
  std::vector<Zernike> preimages;  // g_j

  int count() const { return static_cast<int>(values.size()); }
};

// L2 inner product of two enclosures (Zernike orthogonality constant
// pi/(n+1) per complex mode), with error-slot cross terms absorbed.
Ball l2_pair(const Zernike& a, const Zernike& b);

// ||f||_{L2} upper bound.
Radius l2_norm_upper(const Zernike& a);

// True if DG(u*) restricted to the parity subspace has at most
// eig.count() eigenvalues in [theta, inf): encloses DG(u*) - K over the
// partition and certifies spectral radius < theta.
bool at_most_n(const Weight& w, const Zernike& u_encl, const EigenData& eig, Radius theta,
               const ProductTable& pt, const ModePartition& partition, int squarings,
               double* sr_out = nullptr);

// True if DG(u*) has at least eig.count() eigenvalues in [a, inf):
// ball Gram-Schmidt + Gershgorin with the Gram-residual correction.
// Returns false on a failed bound; inconclusive_out reports a Gram matrix
// that could not be certified positive definite.
bool at_least_m(const Weight& w, const Zernike& u_encl, const EigenData& eig, Radius a,
                const ProductTable& pt, bool* inconclusive_out = nullptr, double* gersh_out = nullptr,
                double* eta_out = nullptr);

struct MorseVerdict {
  bool pinned = false;
  int index = -1;      // valid when pinned
  int even_lo = 0, even_hi = 0, odd_lo = 0, odd_hi = 0;
  bool nonradial = false;
  std::string note;
};

struct MorseParams {
  Radius theta;
  Radius a;
  int n_part = 0;
  int squarings = 8;
  int at_least_even = -1;  // default: eig_even.count()
  int at_least_odd = 0;    // how many odd vectors to run the Gershgorin bound on
};

// Counts eigenvalues of DG(u*) above 1 on both parity subspaces; the known
// odd eigenvalue 1 (the angular derivative of a non-radial solution) is
// excluded from the index when a non-radiality witness exists.
MorseVerdict morse_index(const Weight& w, const Zernike& u_encl, const EigenData& eig_even,
                         const EigenData& eig_odd, const MorseParams& params, const ProductTable& pt);

}  // namespace zernpde
