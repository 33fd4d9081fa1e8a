#include "zernpde/gmap.hpp"

#include "zernpde/qpoly.hpp"

namespace zernpde {

Weight::Weight(Zernike w) : z(std::move(w)) {
  if (z.parity() != Parity::even) throw BallDomain("Weight: must be even parity");
  for (int m = 1; m <= z.layout().size; ++m) {
    for (int j = 0; j <= z.layout().Dm(m); ++j)
      if (!z.coeff(m, j).is_exact_zero()) throw BallDomain("Weight: must be radial (m = 0 support only)");
    for (const Radius& t : z.radials()[m].tails)
      if (!t.is_zero()) throw BallDomain("Weight: must be radial (m = 0 support only)");
  }
  for (int b = 1; b <= 2 * z.layout().size; ++b)
    if (!z.band_error(b).is_zero()) throw BallDomain("Weight: must be radial (m = 0 support only)");
  // spot-check nonnegativity at sample radii (input obligation, not a proof)
  for (int i = 0; i <= 16; ++i) {
    Ball v = eval_point_cs(z, Ball(i / 16.0), Ball(1.0), Ball(0.0));
    if (v.upper() < -1e-12) throw BallDomain("Weight: negative at sample radius");
  }
}

Weight weight_radial_power(int alpha, Rational rho, int size) {
  Layout lay(size);
  if (alpha < 0 || alpha % 2 != 0) throw BallDomain("weight_radial_power: alpha must be even and >= 0");
  if (alpha > 2 * lay.Dm(0)) throw BallDomain("weight_radial_power: alpha exceeds representable degree");
  Zernike z(lay, Parity::even, rho);
  std::vector<mpq_class> c = radial_power_coeffs(alpha);
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != 0) z.set_coeff(0, static_cast<int>(j), ball_from_mpq(c[j]));
  return Weight(std::move(z));
}

Zernike g_apply(const Weight& w, const Zernike& u, const ProductTable& pt) {
  if (u.parity() != Parity::even) throw BallDomain("g_apply: u must be even parity");
  Zernike sq = multiply(u, u, pt);
  Zernike cube = multiply(sq, u, pt);
  return inv_neg_lap(multiply(w.z, cube, pt));
}

Zernike dg_multiplier(const Weight& w, const Zernike& u, const ProductTable& pt) {
  if (u.parity() != Parity::even) throw BallDomain("dg_multiplier: u must be even parity");
  Zernike sq = multiply(u, u, pt);
  return scale(Ball(3.0), multiply(w.z, sq, pt));
}

Zernike dg_apply_with(const Zernike& q, const Zernike& h, const ProductTable& pt) {
  return inv_neg_lap(multiply(q, h, pt));
}

Zernike dg_apply(const Weight& w, const Zernike& u, const Zernike& h, const ProductTable& pt) {
  return dg_apply_with(dg_multiplier(w, u, pt), h, pt);
}

}  // namespace zernpde
