#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace zernpde {

struct BallOverflow : std::runtime_error {
  explicit BallOverflow(const std::string& what) : std::runtime_error(what) {}
};

struct BallDomain : std::runtime_error {
  explicit BallDomain(const std::string& what) : std::runtime_error(what) {}
};

// Directed-rounding helpers over IEEE doubles. All operations run in the
// default round-to-nearest mode; soundness comes from error-free transforms
// (2Sum, FMA residuals) and one-ulp nudges, never from fesetround.
namespace rnd {

inline double up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

inline double dn(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

inline double add_up(double a, double b) { return up(a + b); }
inline double sub_up(double a, double b) { return up(a - b); }
inline double mul_up(double a, double b) { return up(a * b); }
inline double div_up(double a, double b) { return up(a / b); }
inline double add_dn(double a, double b) { return dn(a + b); }
inline double sub_dn(double a, double b) { return dn(a - b); }
inline double mul_dn(double a, double b) { return dn(a * b); }
inline double div_dn(double a, double b) { return dn(a / b); }
inline double sqrt_up(double a) { return up(std::sqrt(a)); }
inline double sqrt_dn(double a) { return a <= 0 ? 0.0 : dn(std::sqrt(a)); }

// Exact rounding error of a round-to-nearest sum (Knuth 2Sum).
inline double two_sum_err(double a, double b, double s) {
  double bv = s - a;
  double av = s - bv;
  return (a - av) + (b - bv);
}

// |a*b - fl(a*b)|, exact for normal results; for subnormal results the FMA
// residual itself may round, so callers add kSubnormalGuard.
inline double mul_err(double a, double b, double p) { return std::fma(a, b, -p); }

inline constexpr double kSubnormalGuard = std::numeric_limits<double>::denorm_min();

inline double half_ulp(double x) {
  double a = std::fabs(x);
  return 0.5 * (up(a) - a);
}

}  // namespace rnd

// Nonnegative finite bound. Sums and products round upward, so a Radius can
// only ever grow past the true value it bounds.
class Radius {
 public:
  Radius() = default;
  explicit Radius(double v) : v_(v) {
    if (!(v >= 0) || !std::isfinite(v)) throw BallDomain("Radius: need finite value >= 0");
  }

  double value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  friend Radius operator+(Radius a, Radius b) {
    double s = rnd::add_up(a.v_, b.v_);
    if (!std::isfinite(s)) throw BallOverflow("Radius: sum overflow");
    return Radius(s);
  }
  friend Radius operator*(Radius a, Radius b) {
    double p = rnd::mul_up(a.v_, b.v_);
    if (!std::isfinite(p)) throw BallOverflow("Radius: product overflow");
    return Radius(p);
  }
  Radius& operator+=(Radius o) { return *this = *this + o; }
  friend bool operator<(Radius a, Radius b) { return a.v_ < b.v_; }
  friend bool operator<=(Radius a, Radius b) { return a.v_ <= b.v_; }
  friend bool operator==(Radius a, Radius b) { return a.v_ == b.v_; }

  static Radius max(Radius a, Radius b) { return Radius(a.v_ > b.v_ ? a.v_ : b.v_); }

 private:
  double v_ = 0;
};

// Interval enclosure of a real number: the set {x : |x - center| <= radius}.
// Both fields are finite; operations that would overflow throw BallOverflow
// rather than silently truncating.
class Ball {
 public:
  Ball() = default;
  Ball(double center) : c_(center) { check(); }  // NOLINT: implicit by design
  Ball(double center, double radius) : c_(center), r_(radius) { check(); }

  static Ball from_endpoints(double lo, double hi) {
    if (!(lo <= hi)) throw BallDomain("Ball: endpoints out of order");
    double c = 0.5 * (lo + hi);
    if (!std::isfinite(c)) throw BallOverflow("Ball: endpoint midpoint overflow");
    double r = std::fmax(rnd::sub_up(hi, c), rnd::sub_up(c, lo));
    return Ball(c, r);
  }

  double center() const { return c_; }
  double radius() const { return r_; }
  double upper() const { return rnd::add_up(c_, r_); }
  double lower() const { return rnd::sub_dn(c_, r_); }

  bool is_exact_zero() const { return c_ == 0 && r_ == 0; }
  bool contains(double x) const { return lower() <= x && x <= upper(); }
  bool contains_zero() const { return lower() <= 0 && 0 <= upper(); }
  // True only if every member is nonzero.
  bool excludes_zero() const { return lower() > 0 || upper() < 0; }

  // Upper bound on max{|x| : x in this}.
  Radius upper_abs() const { return Radius(rnd::add_up(std::fabs(c_), r_)); }
  // Lower bound on min{|x| : x in this} (0 if the ball straddles zero).
  double lower_abs() const {
    double d = rnd::sub_dn(std::fabs(c_), r_);
    return d > 0 ? d : 0.0;
  }

  friend Ball operator-(Ball a) { return Ball(-a.c_, a.r_); }

  friend Ball operator+(Ball a, Ball b) {
    double c = a.c_ + b.c_;
    double e = std::fabs(rnd::two_sum_err(a.c_, b.c_, c));
    double r = rnd::add_up(rnd::add_up(a.r_, b.r_), e);
    return make_checked(c, r, "add");
  }

  friend Ball operator-(Ball a, Ball b) { return a + (-b); }

  friend Ball operator*(Ball a, Ball b) {
    double c = a.c_ * b.c_;
    double e = std::fabs(rnd::mul_err(a.c_, b.c_, c));
    if (a.c_ != 0 && b.c_ != 0 && std::fabs(c) < std::numeric_limits<double>::min())
      e = rnd::add_up(e, rnd::kSubnormalGuard);
    double cross = rnd::add_up(rnd::mul_up(std::fabs(a.c_), b.r_), rnd::mul_up(a.r_, std::fabs(b.c_)));
    double r = rnd::add_up(rnd::add_up(cross, rnd::mul_up(a.r_, b.r_)), e);
    return make_checked(c, r, "mul");
  }

  friend Ball operator/(Ball a, Ball b) {
    double blo = rnd::sub_dn(std::fabs(b.c_), b.r_);
    if (!(blo > 0)) throw BallDomain("Ball: division by interval containing zero");
    double c = a.c_ / b.c_;
    // |x/y - ac/bc| <= (ar|bc| + |ac|br) / (|y| |bc|) with |y| >= blo.
    double num = rnd::add_up(rnd::mul_up(a.r_, std::fabs(b.c_)), rnd::mul_up(std::fabs(a.c_), b.r_));
    double den = rnd::mul_dn(blo, std::fabs(b.c_));
    double r = rnd::add_up(rnd::div_up(num, den), rnd::half_ulp(c));
    return make_checked(c, r, "div");
  }

  Ball& operator+=(Ball o) { return *this = *this + o; }
  Ball& operator-=(Ball o) { return *this = *this - o; }
  Ball& operator*=(Ball o) { return *this = *this * o; }

  // Enclosure of {sqrt(x) : x in this}; the ball must be >= 0.
  friend Ball sqrt(Ball a) {
    double lo = a.lower(), hi = a.upper();
    if (lo < 0) throw BallDomain("Ball: sqrt of interval reaching below zero");
    double slo = rnd::sqrt_dn(lo);
    double shi = rnd::sqrt_up(hi);
    return from_endpoints(slo, shi);
  }

  // Intersection with [lo, hi]; valid only when the true value set is known
  // to lie inside the clamp (used e.g. for cos/sin ranges).
  Ball clamp(double lo, double hi) const {
    double l = std::fmax(lower(), lo);
    double h = std::fmin(upper(), hi);
    if (l > h) return Ball(0.5 * (lo + hi), 0.5 * rnd::sub_up(hi, lo));
    return from_endpoints(l, h);
  }

  friend Ball hull(Ball a, Ball b) {
    return from_endpoints(std::fmin(a.lower(), b.lower()), std::fmax(a.upper(), b.upper()));
  }

 private:
  void check() const {
    if (!std::isfinite(c_) || !std::isfinite(r_)) throw BallOverflow("Ball: non-finite field");
    if (r_ < 0) throw BallDomain("Ball: radius < 0");
  }

  static Ball make_checked(double c, double r, const char* op) {
    if (!std::isfinite(c) || !std::isfinite(r))
      throw BallOverflow(std::string("Ball: overflow in ") + op);
    return Ball(c, r);
  }

  double c_ = 0;
  double r_ = 0;
};

enum class ArithOp { add, sub, mul, div };

inline Ball arith(ArithOp op, Ball a, Ball b) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw BallDomain("arith: bad op");
}

inline Radius upper_abs(Ball a) { return a.upper_abs(); }

// Enclosure of pi, verified against the decimal expansion
// 3.14159265358979323846...; the nearest double sits below pi by < 1.3e-16.
inline Ball pi_ball() { return Ball(3.141592653589793, 2.0e-16); }

// Hex-float serialization; round-trips bit-exactly.
std::string ball_to_string(Ball b);
Ball ball_from_string(const std::string& s);

}  // namespace zernpde
