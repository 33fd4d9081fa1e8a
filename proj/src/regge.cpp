#include "zernpde/regge.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace zernpde {

namespace {

// Prime-exponent vectors for factorials (Legendre's formula), grown on demand.
class FactCache {
 public:
  void ensure(long n) {
    if (n < long(fexp_.size())) return;
    long cap = std::max<long>(n, 2 * long(fexp_.size()) + 16);
    sieve(cap + 1);
    fexp_.assign(cap + 1, {});
    std::vector<int> cur(primes_.size(), 0);
    fexp_[0] = cur;
    for (long k = 1; k <= cap; ++k) {
      long m = k;
      for (std::size_t pi = 0; pi < primes_.size() && primes_[pi] <= m; ++pi) {
        while (m % primes_[pi] == 0) {
          ++cur[pi];
          m /= primes_[pi];
        }
      }
      fexp_[k] = cur;
    }
  }

  const std::vector<int>& fact_exps(long n) { ensure(n); return fexp_[n]; }
  const std::vector<long>& primes() const { return primes_; }

  mpz_class from_exps(const std::vector<int>& e) const {
    mpz_class r = 1, pw;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(primes_[i]), static_cast<unsigned long>(e[i]));
      r *= pw;
    }
    return r;
  }

 private:
  void sieve(long upto) {
    primes_.clear();
    std::vector<char> comp(upto + 1, 0);
    for (long p = 2; p <= upto; ++p) {
      if (comp[p]) continue;
      primes_.push_back(p);
      for (long q = p * p; q <= upto; q += p) comp[q] = 1;
    }
  }

  std::vector<long> primes_;
  std::vector<std::vector<int>> fexp_;
};

FactCache& fact_cache() {
  static thread_local FactCache c;
  return c;
}

const int kRowPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
const int kPermParity[6] = {0, 1, 1, 0, 0, 1};

}  // namespace

bool ReggeMatrix::valid() const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (e[i][j] < 0) return false;
  long J = row_col_sum();
  for (int i = 0; i < 3; ++i) {
    if (e[i][0] + e[i][1] + e[i][2] != J) return false;
    if (e[0][i] + e[1][i] + e[2][i] != J) return false;
  }
  return true;
}

ReggeMatrix ReggeMatrix::from_zernike_modes(long n1, long m1, long n2, long m2, long n3) {
  long m3 = m1 + m2;
  if (((n1 ^ m1) | (n2 ^ m2) | (n3 ^ m3)) & 1)
    throw BallDomain("ReggeMatrix: n_j and m_j must have equal parity");
  ReggeMatrix r;
  r.e[0] = {(n2 + n3 - n1) / 2, (n3 + n1 - n2) / 2, (n1 + n2 - n3) / 2};
  r.e[1] = {(n1 - m1) / 2, (n2 - m2) / 2, (n3 + m3) / 2};
  r.e[2] = {(n1 + m1) / 2, (n2 + m2) / 2, (n3 - m3) / 2};
  return r;
}

ReggeMatrix CanonicalRegge::expand() const {
  ReggeMatrix r;
  r.e[0] = {S, L, X + B - T};
  r.e[1] = {X, B, S + L - T};
  r.e[2] = {L + B - T, S + X - T, T};
  return r;
}

std::pair<CanonicalRegge, int> normal_form(const ReggeMatrix& r) {
  if (!r.valid()) throw BallDomain("normal_form: invalid Regge matrix");
  bool found = false;
  CanonicalRegge best{};
  int best_exp = 0;
  for (int tr = 0; tr < 2; ++tr) {
    for (int rp = 0; rp < 6; ++rp) {
      for (int cp = 0; cp < 6; ++cp) {
        long q[3][3];
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            int si = kRowPerms[rp][i], sj = kRowPerms[cp][j];
            q[i][j] = tr ? r.e[sj][si] : r.e[si][sj];
          }
        CanonicalRegge c{q[0][1], q[0][0], q[2][2], q[1][0], q[1][1]};
        if (!c.satisfies_constraints()) continue;
        if (q[0][2] != c.X + c.B - c.T || q[1][2] != c.S + c.L - c.T ||
            q[2][0] != c.L + c.B - c.T || q[2][1] != c.S + c.X - c.T)
          continue;
        int exp = kPermParity[rp] ^ kPermParity[cp];
        if (!found || c < best || (c == best && exp < best_exp)) {
          found = true;
          best = c;
          best_exp = exp;
        }
      }
    }
  }
  if (!found) throw BallDomain("normal_form: no canonical image (matrix not transformable)");
  return {best, best_exp};
}

ExactSquare value_squared(const ReggeMatrix& r) {
  static const ExactSquare kZero{+1, 0, 1};
  if (!r.valid()) return kZero;
  long J = r.row_col_sum();

  long a1 = r.e[0][1] - r.e[1][0];
  long a2 = r.e[0][0] - r.e[2][1];
  long b1 = r.e[2][0], b2 = r.e[1][0], b3 = r.e[2][1];
  long kmin = std::max<long>({0, -a1, -a2});
  long kmax = std::min<long>({b1, b2, b3});
  if (kmin > kmax) return kZero;

  FactCache& fc = fact_cache();
  fc.ensure(J + 1);
  std::size_t np = fc.primes().size();

  // Exponent vectors of the Q_k, and the elementwise max (the LCM).
  std::vector<std::vector<int>> qexp;
  qexp.reserve(kmax - kmin + 1);
  std::vector<int> lcm_exp(np, 0);
  for (long k = kmin; k <= kmax; ++k) {
    std::vector<int> q(np, 0);
    for (long f : {k, a1 + k, a2 + k, b1 - k, b2 - k, b3 - k}) {
      const std::vector<int>& fe = fc.fact_exps(f);
      for (std::size_t i = 0; i < fe.size(); ++i) q[i] += fe[i];
    }
    for (std::size_t i = 0; i < np; ++i) lcm_exp[i] = std::max(lcm_exp[i], q[i]);
    qexp.push_back(std::move(q));
  }

  // Alternating sum of lcm/Q_k over the integers.
  mpz_class sum = 0;
  std::vector<int> diff(np);
  for (long k = kmin; k <= kmax; ++k) {
    const std::vector<int>& q = qexp[k - kmin];
    for (std::size_t i = 0; i < np; ++i) diff[i] = lcm_exp[i] - q[i];
    mpz_class term = fc.from_exps(diff);
    if (k & 1) sum -= term; else sum += term;
  }
  if (sum == 0) return kZero;

  // value^2 = (prod R_ij! / (J+1)!) * sum^2 / lcm^2
  std::vector<int> exps(np, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const std::vector<int>& fe = fc.fact_exps(r.e[i][j]);
      for (std::size_t t = 0; t < fe.size(); ++t) exps[t] += fe[t];
    }
  {
    const std::vector<int>& fe = fc.fact_exps(J + 1);
    for (std::size_t t = 0; t < fe.size(); ++t) exps[t] -= fe[t];
  }
  for (std::size_t t = 0; t < np; ++t) exps[t] -= 2 * lcm_exp[t];

  std::vector<int> pos(np, 0), neg(np, 0);
  for (std::size_t t = 0; t < np; ++t) (exps[t] >= 0 ? pos[t] : neg[t]) = std::abs(exps[t]);

  mpz_class num = sum * sum * fc.from_exps(pos);
  mpz_class den = fc.from_exps(neg);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  num /= g;
  den /= g;

  int sign = ((r.e[0][1] - r.e[2][2]) & 1) ? -1 : +1;
  if (sum < 0) sign = -sign;
  return ExactSquare{sign, num, den};
}

namespace {

// Zero unless the modes satisfy the selection rules; fills the Regge matrix.
bool cg_admissible(long n1, long m1, long n2, long m2, long n3, ReggeMatrix* out) {
  long m3 = m1 + m2;
  if (n1 < 0 || n2 < 0 || n3 < 0) return false;
  if (std::labs(m1) > n1 || std::labs(m2) > n2 || std::labs(m3) > n3) return false;
  if (((n1 ^ m1) | (n2 ^ m2) | (n3 ^ m3)) & 1) return false;
  if (n3 > n1 + n2 || n3 < std::labs(n1 - n2)) return false;
  if (out) *out = ReggeMatrix::from_zernike_modes(n1, m1, n2, m2, n3);
  return true;
}

ExactSquare scaled_square(const ExactSquare& v, long factor) {
  mpq_class c = v.squared() * factor;
  c.canonicalize();
  return ExactSquare{+1, c.get_num(), c.get_den()};
}

}  // namespace

ExactSquare cg_squared(long n1, long m1, long n2, long m2, long n3) {
  ReggeMatrix r;
  if (!cg_admissible(n1, m1, n2, m2, n3, &r)) return ExactSquare{+1, 0, 1};
  return scaled_square(value_squared(r), n3 + 1);
}

ReggeIndexer::ReggeIndexer(long max_l) : max_l_(max_l) {
  if (max_l < 0) throw BallDomain("ReggeIndexer: max_l must be >= 0");
  std::size_t side = max_l + 1;
  try {
    prefix_.assign(side * side * side, 0);
  } catch (const std::bad_alloc&) {
    throw std::runtime_error("ReggeIndexer: cannot allocate prefix table for max_l=" + std::to_string(max_l));
  }
  std::uint64_t running = 0;
  for (long l = 0; l <= max_l; ++l)
    for (long s = 0; s <= max_l; ++s)
      for (long t = 0; t <= max_l; ++t) {
        at(l, s, t) = running;
        if (s <= l && t >= s && t <= l && 2 * t <= l + s)
          running += std::uint64_t(l - t + 1) * std::uint64_t(t - s + 1);
      }
  total_ = running;
}

std::uint64_t ReggeIndexer::index(const CanonicalRegge& c) const {
  if (!c.satisfies_constraints()) throw BallDomain("ReggeIndexer: tuple violates canonical constraints");
  if (c.L > max_l_) throw BallDomain("ReggeIndexer: L exceeds table bound");
  return at(c.L, c.S, c.T) + std::uint64_t(c.X - c.T) * std::uint64_t(c.T - c.S + 1) +
         std::uint64_t(c.B - c.S + 1);
}

CGTable CGTable::build(long max_n) {
  if (max_n < 0) throw BallDomain("CGTable: max_n must be >= 0");
  CGTable t;
  t.max_n_ = max_n;
  t.indexer_ = ReggeIndexer(2 * max_n);
  // Every query orbit with n1, n2 <= max_n has a representative with
  // n1 >= n2, m1 >= 0 (and m2 >= 0 when m1 = 0); see the symmetry notes.
  for (long n1 = 0; n1 <= max_n; ++n1)
    for (long n2 = 0; n2 <= n1; ++n2)
      for (long m1 = n1 & 1; m1 <= n1; m1 += 2)
        for (long m2 = (m1 == 0) ? (n2 & 1) : -n2; m2 <= n2; m2 += 2) {
          long lo = std::max(std::labs(m1 + m2), n1 - n2);
          if (((lo ^ n1 ^ n2) & 1) != 0) ++lo;
          for (long n3 = lo; n3 <= n1 + n2; n3 += 2) {
            ReggeMatrix r;
            if (!cg_admissible(n1, m1, n2, m2, n3, &r)) continue;
            auto [canon, exp] = normal_form(r);
            (void)exp;
            std::uint64_t idx = t.indexer_.index(canon);
            if (t.values_.find(idx) == t.values_.end())
              t.values_.emplace(idx, value_squared(canon.expand()));
          }
        }
  return t;
}

const ExactSquare* CGTable::find_index(std::uint64_t idx) const {
  auto it = values_.find(idx);
  return it == values_.end() ? nullptr : &it->second;
}

ExactSquare CGTable::symbol(const ReggeMatrix& r) const {
  if (!r.valid()) return ExactSquare{+1, 0, 1};
  auto [canon, exp] = normal_form(r);
  const ExactSquare* v = find_index(indexer_.index(canon));
  if (!v)
    throw std::runtime_error("CGTable: query outside served range (need table_build(max_n) with max_n >= " +
                             std::to_string(r.row_col_sum()) + ")");
  if (exp && (r.row_col_sum() & 1)) return v->negated();
  return *v;
}

ExactSquare CGTable::cg(long n1, long m1, long n2, long m2, long n3) const {
  ReggeMatrix r;
  if (!cg_admissible(n1, m1, n2, m2, n3, &r)) return ExactSquare{+1, 0, 1};
  if (n1 > max_n_ || n2 > max_n_)
    throw std::runtime_error("CGTable: degrees exceed served range, need max_n >= " +
                             std::to_string(std::max(n1, n2)) + " (have " + std::to_string(max_n_) + ")");
  return scaled_square(symbol(r), n3 + 1);
}

namespace {

void write_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }
void write_u64(std::ostream& os, std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }
std::uint32_t read_u32(std::istream& is) { std::uint32_t v = 0; is.read(reinterpret_cast<char*>(&v), 4); return v; }
std::uint64_t read_u64(std::istream& is) { std::uint64_t v = 0; is.read(reinterpret_cast<char*>(&v), 8); return v; }

void write_mpz(std::ostream& os, const mpz_class& z) {
  std::size_t count = 0;
  std::vector<unsigned char> buf((mpz_sizeinbase(z.get_mpz_t(), 2) + 7) / 8 + 1);
  mpz_export(buf.data(), &count, 1, 1, 1, 0, z.get_mpz_t());
  write_u32(os, static_cast<std::uint32_t>(count));
  if (count) os.write(reinterpret_cast<const char*>(buf.data()), count);
}

mpz_class read_mpz(std::istream& is) {
  std::uint32_t count = read_u32(is);
  if (count == 0) return 0;
  std::vector<unsigned char> buf(count);
  is.read(reinterpret_cast<char*>(buf.data()), count);
  mpz_class z;
  mpz_import(z.get_mpz_t(), count, 1, 1, 1, 0, buf.data());
  return z;
}

constexpr std::uint32_t kCgMagic = 0x5443475Au;  // "ZGCT"
constexpr std::uint32_t kCgVersion = 1;

}  // namespace

void CGTable::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("CGTable: cannot write " + path);
  write_u32(os, kCgMagic);
  write_u32(os, kCgVersion);
  write_u64(os, static_cast<std::uint64_t>(max_n_));
  write_u64(os, values_.size());
  std::vector<std::uint64_t> keys;
  keys.reserve(values_.size());
  for (const auto& kv : values_) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end());
  for (std::uint64_t k : keys) {
    const ExactSquare& v = values_.at(k);
    write_u64(os, k);
    char s = static_cast<char>(v.sign);
    os.write(&s, 1);
    write_mpz(os, v.num);
    write_mpz(os, v.den);
  }
  if (!os) throw std::runtime_error("CGTable: write failed for " + path);
}

CGTable CGTable::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("CGTable: cannot read " + path);
  if (read_u32(is) != kCgMagic) throw std::runtime_error("CGTable: bad magic in " + path);
  if (read_u32(is) != kCgVersion) throw std::runtime_error("CGTable: unsupported version in " + path);
  CGTable t;
  t.max_n_ = static_cast<long>(read_u64(is));
  std::uint64_t count = read_u64(is);
  t.indexer_ = ReggeIndexer(2 * t.max_n_);
  t.values_.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t k = read_u64(is);
    char s = 0;
    is.read(&s, 1);
    mpz_class num = read_mpz(is);
    mpz_class den = read_mpz(is);
    if (!is) throw std::runtime_error("CGTable: truncated file " + path);
    t.values_.emplace(k, ExactSquare{s, num, den});
  }
  return t;
}

CGTable CGTable::build_cached(long max_n, const std::string& path) {
  if (!path.empty() && std::filesystem::exists(path)) {
    try {
      CGTable t = load(path);
      if (t.max_n_ >= max_n) return t;
    } catch (const std::exception&) {
      // fall through and rebuild
    }
  }
  CGTable t = build(max_n);
  if (!path.empty()) t.save(path);
  return t;
}

std::string describe(const CanonicalRegge& c) {
  std::ostringstream os;
  os << "(L=" << c.L << ", S=" << c.S << ", T=" << c.T << ", X=" << c.X << ", B=" << c.B << ")";
  return os.str();
}

std::string describe(const ExactSquare& v) {
  std::ostringstream os;
  if (v.is_zero()) return "0";
  os << (v.sign < 0 ? "-" : "+") << "sqrt(" << v.num.get_str() << "/" << v.den.get_str() << ")";
  return os.str();
}

}  // namespace zernpde
