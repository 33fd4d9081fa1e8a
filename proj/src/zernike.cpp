#include "zernpde/zernike.hpp"

#include <algorithm>
#include <cmath>

#include "zernpde/qpoly.hpp"

namespace zernpde {

Zernike::Zernike(Layout lay, Parity parity, Rational rho)
    : layout_(lay), parity_(parity), rho_(rho) {
  if (!(rho.p > 0 && rho.approx() >= 1.0)) throw BallDomain("Zernike: rho must be >= 1");
  radials_.resize(lay.size + 1);
  for (int m = 0; m <= lay.size; ++m) {
    radials_[m].m = m;
    radials_[m].coeffs.assign(lay.D + 1, Ball());
    radials_[m].tails.assign(lay.D + 2, Radius());
  }
  band_errors_.assign(2 * lay.size + 1, Radius());
}

void Zernike::set_coeff(int m, int j, Ball b) {
  if (!layout_.coeff_active(m, j)) throw BallDomain("Zernike: inactive coefficient slot");
  if (parity_ == Parity::odd && m == 0) throw BallDomain("Zernike: odd parity has no m=0 modes");
  radials_[m].coeffs[j] = b;
}

void Zernike::add_coeff(int m, int j, Ball b) {
  if (b.is_exact_zero()) return;
  set_coeff(m, j, coeff(m, j) + b);
}

bool Zernike::has_error_mass() const {
  for (const auto& rad : radials_)
    for (const auto& t : rad.tails)
      if (!t.is_zero()) return true;
  for (const auto& e : band_errors_)
    if (!e.is_zero()) return true;
  return false;
}

Zernike zero_like(const Zernike& u) { return Zernike(u.layout(), u.parity(), u.rho()); }

Zernike mode_enclosure(Layout lay, Parity p, Rational rho, int m, int j, Ball c) {
  Zernike z(lay, p, rho);
  z.set_coeff(m, j, c);
  return z;
}

namespace {

int parity_min_band(Parity p) { return p == Parity::odd ? 1 : 0; }

// Max power of rho an operation over this layout can need.
int rho_pow_limit(const Layout& lay) { return 2 * lay.D + 2; }

struct ErrSlot {
  bool banded;  // radial tail (band known) vs band-error (band ranged)
  int band;     // tail: exact band; band-error: effective minimal band
  int min_deg;  // lower bound on every covered degree
  double radius;
};

std::vector<ErrSlot> error_slots(const Zernike& u) {
  std::vector<ErrSlot> out;
  for (int m = 0; m <= u.layout().size; ++m) {
    const Radial& rad = u.radials()[m];
    for (int j = 0; j < static_cast<int>(rad.tails.size()); ++j)
      if (!rad.tails[j].is_zero())
        out.push_back({true, m, m + 2 * j, rad.tails[j].value()});
  }
  int floorb = parity_min_band(u.parity());
  for (int b = 0; b <= 2 * u.layout().size; ++b)
    if (!u.band_error(b).is_zero()) {
      int eff = std::max(b, floorb);
      out.push_back({false, eff, eff, u.band_error(b).value()});
    }
  return out;
}

struct BandTarget {
  int m3;
  bool diff;      // which CG expansion: false -> (m1, +m2), true -> (m1, -m2)
  double weight;  // signed coefficient multiplier
};

// Angular product decomposition for one pair of bands; parities of the two
// factors determine cos/sin combination rules.
void band_targets(Parity pu, Parity pv, int m1, int m2, std::vector<BandTarget>& out) {
  out.clear();
  int s = m1 + m2, d = std::abs(m1 - m2);
  if (pu == Parity::even && pv == Parity::even) {
    if (s == d) {
      out.push_back({s, false, 1.0});  // one of m1, m2 is zero
    } else {
      out.push_back({s, false, 0.5});
      out.push_back({d, true, 0.5});
    }
  } else if (pu == Parity::odd && pv == Parity::odd) {
    out.push_back({d, true, 0.5});
    out.push_back({s, false, -0.5});
  } else {
    // cos(a t) sin(b t) with a the even factor's band, b the odd one's
    int a = (pu == Parity::even) ? m1 : m2;
    int b = (pu == Parity::even) ? m2 : m1;
    if (a == 0) {
      out.push_back({s, false, 1.0});
    } else if (a == b) {
      out.push_back({s, false, 0.5});
    } else {
      out.push_back({s, false, 0.5});
      out.push_back({d, true, b > a ? 0.5 : -0.5});
    }
  }
}

void add_error_mass(Zernike& z, bool band_known, int band, int min_deg, double mass) {
  if (mass == 0) return;
  const Layout& lay = z.layout();
  Radius r(mass);
  if (band_known && band <= lay.size) {
    int j = std::max(0, (min_deg - band) / 2);
    z.add_tail(band, std::min(j, lay.D + 1), r);
  } else {
    int floorb = parity_min_band(z.parity());
    z.add_band_error(std::min(std::max(band, floorb), 2 * lay.size), r);
  }
}

}  // namespace

ProductTable::ProductTable(const CGTable& cg, Layout lay)
    : layout_(lay), modes_(lay, Parity::even), cg_max_n_(cg.max_n()) {
  if (cg.max_n() < lay.max_coeff_degree())
    throw std::runtime_error("ProductTable: CG table too small, need max_n >= " +
                             std::to_string(lay.max_coeff_degree()));
  int M = modes_.count();
  table_.resize(static_cast<std::size_t>(M) * M * 2);
  for (int a = 0; a < M; ++a) {
    auto [m1, j1] = modes_.modes[a];
    int n1 = lay.degree(m1, j1);
    for (int b = a; b < M; ++b) {
      auto [m2, j2] = modes_.modes[b];
      int n2 = lay.degree(m2, j2);
      for (int kind = 0; kind < 2; ++kind) {
        Expansion& ex = table_[(static_cast<std::size_t>(a) * M + b) * 2 + kind];
        long mu2 = kind == 0 ? m2 : -m2;
        long m3 = std::labs(m1 + mu2);
        ex.m3 = static_cast<int>(m3);
        long lo = std::max(m3, static_cast<long>(std::abs(n1 - n2)));
        if ((lo ^ m3) & 1) ++lo;
        ex.n3_lo = static_cast<int>(lo);
        int dm3 = lay.Dm(static_cast<int>(m3));
        int hi = dm3 < 0 ? static_cast<int>(lo) - 2 : std::min<int>(n1 + n2, m3 + 2 * dm3);
        ex.n3_hi_stored = hi;
        Ball stored_sum(0.0);
        for (long n3 = lo; n3 <= hi; n3 += 2) {
          Ball w = ball_from_mpq(cg.cg(n1, m1, n2, mu2, n3).squared());
          stored_sum += w;
          ex.weights.push_back(w);
        }
        double rem = rnd::sub_up(1.0, stored_sum.lower());
        ex.rem_up = std::min(1.0, std::max(0.0, rem));
      }
    }
  }
}

Radius norm_upper(const Zernike& u) {
  RatPowers rp(u.rho(), rho_pow_limit(u.layout()));
  Radius total;
  for (int m = 0; m <= u.layout().size; ++m) {
    const Radial& rad = u.radials()[m];
    for (int j = 0; j <= u.layout().Dm(m); ++j)
      if (!rad.coeffs[j].is_exact_zero())
        total += rad.coeffs[j].upper_abs() * Radius(rp.up[u.layout().degree(m, j)]);
    for (const Radius& t : rad.tails) total += t;
  }
  for (const Radius& e : u.band_errors()) total += e;
  return total;
}

Radius error_norm_upper(const Zernike& u) {
  Radius total;
  for (const auto& rad : u.radials())
    for (const Radius& t : rad.tails) total += t;
  for (const Radius& e : u.band_errors()) total += e;
  return total;
}

Zernike linear_combine(Ball alpha, const Zernike& u, Ball beta, const Zernike& v) {
  if (!u.compatible(v)) throw BallDomain("linear_combine: parity/rho/size mismatch");
  Zernike out = zero_like(u);
  Radius ra = alpha.upper_abs(), rb = beta.upper_abs();
  for (int m = 0; m <= u.layout().size; ++m) {
    for (int j = 0; j <= u.layout().Dm(m); ++j) {
      Ball c = alpha * u.coeff(m, j) + beta * v.coeff(m, j);
      if (!c.is_exact_zero()) out.set_coeff(m, j, c);
    }
    for (int j = 0; j < static_cast<int>(u.radials()[m].tails.size()); ++j) {
      Radius t = ra * u.tail(m, j) + rb * v.tail(m, j);
      if (!t.is_zero()) out.add_tail(m, j, t);
    }
  }
  for (int b = 0; b <= 2 * u.layout().size; ++b) {
    Radius e = ra * u.band_error(b) + rb * v.band_error(b);
    if (!e.is_zero()) out.add_band_error(b, e);
  }
  return out;
}

Zernike scale(Ball alpha, const Zernike& u) {
  return linear_combine(alpha, u, Ball(0.0), zero_like(u));
}

Zernike widen_band0(const Zernike& u, Radius r) {
  Zernike out = u;
  out.add_band_error(0, r);
  return out;
}

Zernike multiply(const Zernike& u, const Zernike& v, const ProductTable& pt) {
  if (u.rho() != v.rho() || u.layout() != v.layout())
    throw BallDomain("multiply: rho/size mismatch");
  if (pt.layout() != u.layout()) throw BallDomain("multiply: product table layout mismatch");
  const Layout& lay = u.layout();
  Parity pout = (u.parity() == v.parity()) ? Parity::even : Parity::odd;
  Zernike out(lay, pout, u.rho());
  RatPowers rp(u.rho(), rho_pow_limit(lay));
  const ModeIndex& mix = pt.modes();

  struct Active {
    int m, j, n, idx;
    Ball c;
  };
  auto gather = [&](const Zernike& z) {
    std::vector<Active> a;
    for (int m = 0; m <= lay.D; ++m)
      for (int j = 0; j <= lay.Dm(m); ++j)
        if (!z.coeff(m, j).is_exact_zero())
          a.push_back({m, j, lay.degree(m, j), mix.at(m, j), z.coeff(m, j)});
    return a;
  };
  std::vector<Active> au = gather(u), av = gather(v);

  std::vector<BandTarget> targets;
  for (const Active& a : au) {
    for (const Active& b : av) {
      Ball p = a.c * b.c;
      band_targets(u.parity(), v.parity(), a.m, b.m, targets);
      for (const BandTarget& t : targets) {
        const ProductTable::Expansion& ex =
            t.diff ? pt.diff_band(a.idx, b.idx) : pt.sum_band(a.idx, b.idx);
        Ball q = p * Ball(t.weight);
        for (std::size_t i = 0; i < ex.weights.size(); ++i) {
          int n3 = ex.n3_lo + 2 * static_cast<int>(i);
          out.add_coeff(ex.m3, (n3 - ex.m3) / 2, ex.weights[i] * q);
        }
        if (ex.rem_up > 0) {
          double mass = rnd::mul_up(rnd::mul_up(q.upper_abs().value(), ex.rem_up), rp.up[a.n + b.n]);
          int first_out = ex.weights.empty() ? ex.n3_lo : ex.n3_hi_stored + 2;
          if (first_out <= a.n + b.n) add_error_mass(out, true, ex.m3, first_out, mass);
        }
      }
    }
  }

  // coefficient x error and error x error terms
  std::vector<ErrSlot> eu = error_slots(u), ev = error_slots(v);
  auto coef_times_err = [&](const std::vector<Active>& coefs, Parity pc, const std::vector<ErrSlot>& errs,
                            Parity pe) {
    for (const Active& a : coefs) {
      double anorm = rnd::mul_up(a.c.upper_abs().value(), rp.up[a.n]);
      if (anorm == 0) continue;
      for (const ErrSlot& e : errs) {
        double mass = rnd::mul_up(anorm, e.radius);
        if (e.banded) {
          band_targets(pc, pe, a.m, e.band, targets);
          for (const BandTarget& t : targets)
            add_error_mass(out, true, t.m3, std::max(t.m3, e.min_deg - a.n),
                           rnd::mul_up(std::fabs(t.weight), mass));
        } else {
          add_error_mass(out, false, std::max(e.band - a.m, 0), 0, mass);
        }
      }
    }
  };
  coef_times_err(au, u.parity(), ev, v.parity());
  coef_times_err(av, v.parity(), eu, u.parity());

  for (const ErrSlot& e1 : eu) {
    for (const ErrSlot& e2 : ev) {
      double mass = rnd::mul_up(e1.radius, e2.radius);
      if (e1.banded && e2.banded) {
        band_targets(u.parity(), v.parity(), e1.band, e2.band, targets);
        for (const BandTarget& t : targets)
          add_error_mass(out, true, t.m3, t.m3, rnd::mul_up(std::fabs(t.weight), mass));
      } else {
        add_error_mass(out, false, e1.banded ? std::max(e2.band - e1.band, 0)
                                             : (e2.banded ? std::max(e1.band - e2.band, 0) : 0),
                       0, mass);
      }
    }
  }
  return out;
}

Zernike inv_neg_lap(const Zernike& u) {
  const Layout& lay = u.layout();
  Zernike out = zero_like(u);
  Ball rho_b = ball_from_rational(u.rho());
  Ball inv_rho = Ball(1.0) / rho_b;
  Ball lap_factor_num = (rho_b + inv_rho) * (rho_b + inv_rho);
  RatPowers rp(u.rho(), rho_pow_limit(lay));

  auto tail_factor = [&](int N) {
    // (rho + 1/rho)^2 / (4 N (N+2)), valid for remainders of lowest degree N >= 1
    return Radius((lap_factor_num / Ball(4.0 * N * (N + 2))).upper());
  };

  for (int m = 0; m <= lay.D; ++m) {
    for (int j = 0; j <= lay.Dm(m); ++j) {
      Ball c = u.coeff(m, j);
      if (c.is_exact_zero()) continue;
      int n = lay.degree(m, j);
      Ball c2 = ball_from_mpq(mpq_class(1, 4L * (n + 2) * (n + 1)));
      Ball up2 = -(c2 * c);  // weight of V^m_{n+2}
      if (n > m) {
        Ball c1 = ball_from_mpq(mpq_class(-1, 2L * n * (n + 2)));
        Ball c0 = ball_from_mpq(mpq_class(1, 4L * n * (n + 1)));
        out.add_coeff(m, j - 1, -(c0 * c));
        out.add_coeff(m, j, -(c1 * c));
      } else {
        out.add_coeff(m, j, c2 * c);
      }
      if (j + 1 <= lay.Dm(m)) {
        out.add_coeff(m, j + 1, up2);
      } else {
        double mass = rnd::mul_up(up2.upper_abs().value(), rp.up[n + 2]);
        add_error_mass(out, true, m, n + 2, mass);
      }
    }
  }

  for (int m = 0; m <= lay.size; ++m) {
    const Radial& rad = u.radials()[m];
    for (int j = 0; j < static_cast<int>(rad.tails.size()); ++j) {
      Radius r = rad.tails[j];
      if (r.is_zero()) continue;
      int N = m + 2 * j;
      if (N == 0) {
        // Split off the constant mode: (-Lap)^{-1} V^0_0 = (V^0_0 - V^0_2)/8,
        // the remainder has degree >= 2.
        Ball mode_norm = (Ball(1.0) + Ball(rp.up[2])) * Ball(0.125);
        Radius safe = r * Radius(mode_norm.upper()) + r * Radius(2.0) * tail_factor(2);
        out.add_tail(0, 0, safe);
      } else {
        out.add_tail(m, std::max(j - 1, 0), r * tail_factor(N));
      }
    }
  }

  for (int b = 0; b <= 2 * lay.size; ++b) {
    Radius r = u.band_error(b);
    if (r.is_zero()) continue;
    int N = std::max(b, parity_min_band(u.parity()));
    if (N == 0) {
      Ball mode_norm = (Ball(1.0) + Ball(rp.up[2])) * Ball(0.125);
      Radius safe = r * Radius(mode_norm.upper()) + r * Radius(2.0) * tail_factor(1);
      out.add_band_error(0, safe);
    } else {
      out.add_band_error(b, r * tail_factor(N));
    }
  }
  return out;
}

Zernike truncate(const Zernike& u, int N) {
  if (N < 0) throw BallDomain("truncate: N must be >= 0");
  Zernike out = u;
  RatPowers rp(u.rho(), rho_pow_limit(u.layout()));
  for (int m = 0; m <= u.layout().D; ++m)
    for (int j = 0; j <= u.layout().Dm(m); ++j) {
      int n = u.layout().degree(m, j);
      if (n < N) continue;
      Ball c = u.coeff(m, j);
      if (c.is_exact_zero()) continue;
      out.set_coeff(m, j, Ball(0.0));
      out.add_tail(m, j, c.upper_abs() * Radius(rp.up[n]));
    }
  return out;
}

double coeff_lower_bound(const Zernike& u, int m, int j) {
  if (!u.layout().coeff_active(m, j)) return 0.0;
  int n = u.layout().degree(m, j);
  RatPowers rp(u.rho(), rho_pow_limit(u.layout()));
  double clow = u.coeff(m, j).lower_abs();
  double spill = 0.0;
  for (int jj = 0; jj <= j; ++jj) spill = rnd::add_up(spill, u.tail(m, jj).value());
  for (int b = 0; b <= std::min(m, 2 * u.layout().size); ++b)
    spill = rnd::add_up(spill, u.band_error(b).value());
  // a coefficient of an error function with norm r is at most r / rho^n
  double cover = rnd::div_up(spill, rp.dn[n]);
  double lo = rnd::sub_dn(clow, cover);
  return lo > 0 ? lo : 0.0;
}

std::pair<Ball, Ball> cos_sin(Ball x) {
  // Reduce |center| below pi by subtracting multiples of 2 pi.
  Ball two_pi = pi_ball() * Ball(2.0);
  double k = std::nearbyint(x.center() / (2.0 * 3.141592653589793));
  if (k != 0) x = x - Ball(k) * two_pi;
  if (x.upper_abs().value() > 8.0) throw BallDomain("cos_sin: argument too wide");
  Ball x2 = x * x;
  Ball c(0.0), s(0.0);
  // Alternating Taylor series; with |x| <= 8 and K = 24 the first omitted
  // terms bound the remainders.
  const int K = 24;
  Ball tc(1.0), ts = x;
  for (int i = 0; i < K; ++i) {
    c += tc;
    s += ts;
    tc = tc * x2 / Ball(-(2.0 * i + 1) * (2.0 * i + 2));
    ts = ts * x2 / Ball(-(2.0 * i + 2) * (2.0 * i + 3));
  }
  c += Ball(0.0, tc.upper_abs().value());
  s += Ball(0.0, ts.upper_abs().value());
  return {c.clamp(-1.0, 1.0), s.clamp(-1.0, 1.0)};
}

Ball eval_point_cs(const Zernike& u, Ball r, Ball cos_t, Ball sin_t) {
  if (r.lower() < -1e-15 || r.upper() > 1.0 + 1e-15)
    throw BallDomain("eval_point: r must lie in [0, 1]");
  r = r.clamp(0.0, 1.0);
  cos_t = cos_t.clamp(-1.0, 1.0);
  sin_t = sin_t.clamp(-1.0, 1.0);
  const Layout& lay = u.layout();
  Ball x = Ball(2.0) * r * r - Ball(1.0);
  x = x.clamp(-1.0, 1.0);

  // cos(m t), sin(m t) by angle addition
  std::vector<Ball> cm(lay.D + 1), sm(lay.D + 1);
  cm[0] = Ball(1.0);
  sm[0] = Ball(0.0);
  for (int m = 1; m <= lay.D; ++m) {
    cm[m] = (cm[m - 1] * cos_t - sm[m - 1] * sin_t).clamp(-1.0, 1.0);
    sm[m] = (sm[m - 1] * cos_t + cm[m - 1] * sin_t).clamp(-1.0, 1.0);
  }

  Ball total(0.0);
  std::vector<Ball> P(lay.D / 2 + 2);
  Ball rm(1.0);
  for (int m = 0; m <= lay.D; ++m) {
    const Radial& rad = u.radials()[m];
    bool any = false;
    for (int j = 0; j <= lay.Dm(m); ++j) any = any || !rad.coeffs[j].is_exact_zero();
    if (any) {
      int jmax = lay.Dm(m);
      P[0] = Ball(1.0);
      if (jmax >= 1) {
        JacobiStep s1 = jacobi_step(m, 1);
        P[1] = ball_from_mpq(s1.A) * x + ball_from_mpq(s1.B);
      }
      for (int l = 2; l <= jmax; ++l) {
        JacobiStep s = jacobi_step(m, l);
        P[l] = (ball_from_mpq(s.A) * x + ball_from_mpq(s.B)) * P[l - 1] + ball_from_mpq(s.C) * P[l - 2];
      }
      Ball f(0.0);
      for (int j = 0; j <= jmax; ++j)
        if (!rad.coeffs[j].is_exact_zero()) f += rad.coeffs[j] * P[j];
      Ball ang = (u.parity() == Parity::even) ? cm[m] : sm[m];
      total += f * rm * ang;
    }
    rm = rm * r;
  }
  // Error slots: |V^m_n| <= 1 on the closed disk, so each contributes its norm.
  total += Ball(0.0, error_norm_upper(u).value());
  return total;
}

Ball eval_point(const Zernike& u, Ball r, Ball theta) {
  auto [c, s] = cos_sin(theta);
  return eval_point_cs(u, r, c, s);
}

bool sn_support_check(const Zernike& u, int n) {
  if (u.parity() != Parity::even) throw BallDomain("sn_support_check: requires even parity");
  if (n <= 0) throw BallDomain("sn_support_check: n must be positive");
  auto band_ok = [&](int m) { return m % n == 0 && (m / n) % 2 == 1; };
  for (int m = 0; m <= u.layout().size; ++m) {
    const Radial& rad = u.radials()[m];
    bool has = false;
    for (int j = 0; j <= u.layout().Dm(m); ++j) has = has || !rad.coeffs[j].is_exact_zero();
    for (const Radius& t : rad.tails) has = has || !t.is_zero();
    if (has && !band_ok(m)) return false;
  }
  for (const Radius& e : u.band_errors())
    if (!e.is_zero()) return false;  // band slots cover a range and cannot be confined
  return true;
}

}  // namespace zernpde
