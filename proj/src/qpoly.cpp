#include "zernpde/qpoly.hpp"

#include <stdexcept>

namespace zernpde {

QPoly qpoly_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

QPoly qpoly_scale(const mpq_class& c, const QPoly& a) {
  QPoly r(a);
  for (auto& x : r) x *= c;
  return r;
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

mpq_class qpoly_eval(const QPoly& a, const mpq_class& x) {
  mpq_class v = 0;
  for (std::size_t i = a.size(); i-- > 0;) v = v * x + a[i];
  return v;
}

JacobiStep jacobi_step(int m, int l) {
  if (l < 1) throw std::invalid_argument("jacobi_step: l >= 1");
  if (l == 1) return {mpq_class(m + 2, 2), mpq_class(-m, 2), mpq_class(0)};
  long L = l, M = m;
  mpq_class den1(2 * L * (L + M));
  JacobiStep s;
  s.A = mpq_class((2 * L + M - 1) * (2 * L + M)) / den1;
  s.B = mpq_class(-(M * M) * (2 * L + M - 1)) / (den1 * (2 * L + M - 2));
  s.C = mpq_class(-(L - 1) * (L + M - 1) * (2 * L + M)) / mpq_class(L * (L + M) * (2 * L + M - 2));
  s.A.canonicalize();
  s.B.canonicalize();
  s.C.canonicalize();
  return s;
}

QPoly jacobi_poly(int m, int l) {
  QPoly pm2 = {mpq_class(1)};  // P_0
  if (l == 0) return pm2;
  JacobiStep s1 = jacobi_step(m, 1);
  QPoly pm1 = {s1.B, s1.A};
  for (int k = 2; k <= l; ++k) {
    JacobiStep s = jacobi_step(m, k);
    QPoly x_pm1(pm1.size() + 1, mpq_class(0));
    for (std::size_t i = 0; i < pm1.size(); ++i) x_pm1[i + 1] = pm1[i];
    QPoly next = qpoly_add(qpoly_add(qpoly_scale(s.A, x_pm1), qpoly_scale(s.B, pm1)),
                           qpoly_scale(s.C, pm2));
    pm2 = std::move(pm1);
    pm1 = std::move(next);
  }
  return pm1;
}

QPoly radial_poly(int m, int j) {
  QPoly p = jacobi_poly(m, j);
  // substitute x = 2 r^2 - 1, then multiply by r^m
  QPoly sub = {mpq_class(1)};
  QPoly x = {mpq_class(-1), mpq_class(0), mpq_class(2)};
  QPoly acc(1, mpq_class(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc = qpoly_add(acc, qpoly_scale(p[i], sub));
    sub = qpoly_mul(sub, x);
  }
  QPoly r(acc.size() + m, mpq_class(0));
  for (std::size_t i = 0; i < acc.size(); ++i) r[i + m] = acc[i];
  return r;
}

std::vector<mpq_class> radial_power_coeffs(int alpha) {
  if (alpha < 0 || alpha % 2 != 0)
    throw std::invalid_argument("radial_power_coeffs: alpha must be even and >= 0");
  int k = alpha / 2;
  // target ((x+1)/2)^k in x = 2r^2 - 1
  QPoly target = {mpq_class(1)};
  QPoly half = {mpq_class(1, 2), mpq_class(1, 2)};
  for (int i = 0; i < k; ++i) target = qpoly_mul(target, half);
  std::vector<QPoly> basis(k + 1);
  for (int j = 0; j <= k; ++j) basis[j] = jacobi_poly(0, j);
  std::vector<mpq_class> c(k + 1, mpq_class(0));
  for (int j = k; j >= 0; --j) {
    mpq_class lead = (static_cast<int>(target.size()) > j) ? target[j] : mpq_class(0);
    mpq_class cj = lead / basis[j][j];
    c[j] = cj;
    target = qpoly_add(target, qpoly_scale(-cj, basis[j]));
  }
  for (const auto& t : target)
    if (t != 0) throw std::logic_error("radial_power_coeffs: expansion residue nonzero");
  return c;
}

}  // namespace zernpde
