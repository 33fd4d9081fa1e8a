#pragma once

#include <gmpxx.h>

#include <vector>

namespace zernpde {

// Dense univariate polynomial over Q; index = power.
using QPoly = std::vector<mpq_class>;

QPoly qpoly_add(const QPoly& a, const QPoly& b);
QPoly qpoly_scale(const mpq_class& c, const QPoly& a);
QPoly qpoly_mul(const QPoly& a, const QPoly& b);
mpq_class qpoly_eval(const QPoly& a, const mpq_class& x);

// Three-term recurrence P_l = (A x + B) P_{l-1} + C P_{l-2} for the Jacobi
// family P^{(0,m)}; l = 1 is the degenerate starting step.
struct JacobiStep {
  mpq_class A, B, C;
};
JacobiStep jacobi_step(int m, int l);

// P^{(0,m)}_l as a polynomial in x.
QPoly jacobi_poly(int m, int l);

// Radial polynomial R^m_{m+2j} as a polynomial in r.
QPoly radial_poly(int m, int j);

// Exact expansion r^alpha = sum_j c_j R^0_{2j}, alpha even and >= 0.
std::vector<mpq_class> radial_power_coeffs(int alpha);

}  // namespace zernpde
