#include "zernpde/rat.hpp"

#include <stdexcept>

namespace zernpde {

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s), 1);
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw BallDomain("Rational: cannot parse '" + s + "'");
  }
}

Ball ball_from_mpq(const mpq_class& x) {
  double d = mpq_get_d(x.get_mpq_t());
  if (!std::isfinite(d)) throw BallOverflow("ball_from_mpq: value out of double range");
  int cmp = mpq_cmp(x.get_mpq_t(), mpq_class(d).get_mpq_t());
  if (cmp == 0) return Ball(d, 0.0);
  double lo = cmp > 0 ? d : rnd::dn(d);
  double hi = cmp > 0 ? rnd::up(d) : d;
  // One more widening step in case mpq_get_d landed two ulps off.
  while (mpq_cmp(x.get_mpq_t(), mpq_class(hi).get_mpq_t()) > 0) hi = rnd::up(hi);
  while (mpq_cmp(x.get_mpq_t(), mpq_class(lo).get_mpq_t()) < 0) lo = rnd::dn(lo);
  return Ball::from_endpoints(lo, hi);
}

RatPowers::RatPowers(Rational r, int nmax) {
  up.resize(nmax + 1);
  dn.resize(nmax + 1);
  mpz_class pn = 1, qn = 1;
  mpz_class p(static_cast<long>(r.p)), q(static_cast<long>(r.q));
  for (int n = 0; n <= nmax; ++n) {
    Ball b = ball_from_mpq(mpq_class(pn, qn));
    up[n] = b.upper();
    dn[n] = std::max(0.0, b.lower());
    pn *= p;
    qn *= q;
  }
}

Ball sqrt_of_rational(const mpz_class& p, const mpz_class& q) {
  if (p < 0 || q <= 0) throw BallDomain("sqrt_of_rational: need p >= 0, q > 0");
  if (p == 0) return Ball(0.0, 0.0);
  mpq_class x(p, q);
  x.canonicalize();
  double d = std::sqrt(mpq_get_d(x.get_mpq_t()));
  if (!std::isfinite(d)) throw BallOverflow("sqrt_of_rational: out of double range");
  // Verified bracket: lo^2 <= p/q <= hi^2, widened by exact compares.
  double lo = d, hi = d;
  auto sq_cmp = [&](double t) {  // sign of t^2 - x
    mpq_class t2 = mpq_class(t) * mpq_class(t);
    return mpq_cmp(t2.get_mpq_t(), x.get_mpq_t());
  };
  while (sq_cmp(lo) > 0) lo = rnd::dn(lo);
  while (sq_cmp(hi) < 0) hi = rnd::up(hi);
  return Ball::from_endpoints(lo, hi);
}

}  // namespace zernpde
