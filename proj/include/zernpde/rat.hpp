#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "zernpde/ball.hpp"

namespace zernpde {

// Small exact rational for quantities like rho = 65/64. Always reduced, q > 0.
struct Rational {
  std::int64_t p = 0;
  std::int64_t q = 1;

  Rational() = default;
  Rational(std::int64_t num, std::int64_t den) : p(num), q(den) {
    if (q == 0) throw BallDomain("Rational: zero denominator");
    if (q < 0) { p = -p; q = -q; }
    std::int64_t g = std::gcd(p < 0 ? -p : p, q);
    if (g > 1) { p /= g; q /= g; }
  }

  bool operator==(const Rational& o) const { return p == o.p && q == o.q; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  double approx() const { return double(p) / double(q); }
  mpq_class to_mpq() const { return mpq_class(p, q); }
  std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }

  static Rational parse(const std::string& s);
};

// Verified enclosure of an exact rational: the double d = mpq_get_d(x) is
// compared exactly against x, then bracketed by at most one ulp on each side.
Ball ball_from_mpq(const mpq_class& x);

inline Ball ball_from_rational(Rational r) { return ball_from_mpq(r.to_mpq()); }

// Upper/lower bounds for r^n, n = 0..nmax, from the exact rational power.
struct RatPowers {
  std::vector<double> up, dn;
  RatPowers() = default;
  RatPowers(Rational r, int nmax);
};

// Enclosure of sqrt(p/q); radius at most a few ulps of the center.
Ball sqrt_of_rational(const mpz_class& p, const mpz_class& q);
inline Ball sqrt_of_rational(std::uint64_t p, std::uint64_t q) {
  return sqrt_of_rational(mpz_class(static_cast<unsigned long>(p)), mpz_class(static_cast<unsigned long>(q)));
}

}  // namespace zernpde
