#pragma once

#include "zernpde/zernike.hpp"

namespace zernpde {

// Radial weight function w; only the m = 0 band may be populated.
// Nonnegativity is an input obligation, checked at sample radii only.
struct Weight {
  Zernike z;

  explicit Weight(Zernike w);
  const Layout& layout() const { return z.layout(); }
};

// Exact expansion of r^alpha (alpha even) in the m = 0 Zernike basis.
Weight weight_radial_power(int alpha, Rational rho, int size);

// G(u) = (-Lap)^{-1}(w u^3) on the even subspace.
Zernike g_apply(const Weight& w, const Zernike& u, const ProductTable& pt);

// DG(u) h = (-Lap)^{-1}(3 w u^2 h); preserves the parity of h.
Zernike dg_apply(const Weight& w, const Zernike& u, const Zernike& h, const ProductTable& pt);

// 3 w u^2, the multiplier inside DG(u); reused across many applications.
Zernike dg_multiplier(const Weight& w, const Zernike& u, const ProductTable& pt);

// (-Lap)^{-1}(q h) where q = dg_multiplier(...).
Zernike dg_apply_with(const Zernike& q, const Zernike& h, const ProductTable& pt);

}  // namespace zernpde
