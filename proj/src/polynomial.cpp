#include "qfan/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "qfan/errors.hpp"

namespace qfan {

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }

Poly Poly::x() { return Poly({Rat(0), Rat(1)}); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rat& Poly::leading() const {
  if (c_.empty()) fail(ErrorCode::ParseError, "leading coefficient of zero polynomial");
  return c_.back();
}

Rat Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
  return c_[static_cast<std::size_t>(i)];
}

bool Poly::is_monic() const { return !c_.empty() && c_.back() == 1; }

Rat Poly::eval(const Rat& x) const {
  Rat v(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

std::pair<Rat, Rat> Poly::eval_interval(const Rat& lo, const Rat& hi) const {
  Rat vlo(0), vhi(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    // [vlo,vhi] * [lo,hi] + coeff
    Rat a = vlo * lo, b = vlo * hi, c = vhi * lo, d = vhi * hi;
    Rat mn = std::min(std::min(a, b), std::min(c, d));
    Rat mx = std::max(std::max(a, b), std::max(c, d));
    vlo = mn + *it;
    vhi = mx + *it;
  }
  return {vlo, vhi};
}

Poly Poly::derivative() const {
  std::vector<Rat> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rat(static_cast<long>(i)));
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  std::vector<Rat> d = c_;
  for (auto& v : d) v /= c_.back();
  return Poly(std::move(d));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return Poly(std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const {
  std::vector<Rat> r = c_;
  for (auto& v : r) v = -v;
  return Poly(std::move(r));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) fail(ErrorCode::ParseError, "polynomial division by zero");
  std::vector<Rat> rem = c_;
  int dd = d.degree();
  if (degree() < dd) return {Poly(), *this};
  std::vector<Rat> quo(static_cast<std::size_t>(degree() - dd + 1), Rat(0));
  for (int i = degree(); i >= dd; --i) {
    Rat f = rem[static_cast<std::size_t>(i)] / d.c_.back();
    if (f == 0) continue;
    quo[static_cast<std::size_t>(i - dd)] = f;
    for (int j = 0; j <= dd; ++j)
      rem[static_cast<std::size_t>(i - dd + j)] -= f * d.c_[static_cast<std::size_t>(j)];
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rat c = coeff(i);
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Rat a = abs(c);
    if (a != 1 || i == 0) os << rat_to_string(a);
    if (i >= 1) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  Poly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  while (true) {
    const Poly& a = chain[chain.size() - 2];
    const Poly& b = chain[chain.size() - 1];
    Poly r = a.divmod(b).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

static int sign_variations(const std::vector<Poly>& chain, const Rat& x) {
  int var = 0, prev = 0;
  for (const auto& p : chain) {
    int s = p.eval(x).sign();
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int sturm_count(const std::vector<Poly>& chain, const Rat& a, const Rat& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

// ---------------------------------------------------------------------------
// Irreducibility over Q: Zassenhaus on the monic integer model.
// ---------------------------------------------------------------------------

namespace {

using ZPoly = std::vector<Int>;  // ascending, trailing zeros trimmed

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Exact division over Z; returns false if not divisible (monic divisor).
bool zdivide_exact(const ZPoly& num, const ZPoly& den, ZPoly& quo) {
  ZPoly rem = num;
  ztrim(rem);
  if (zdeg(rem) < zdeg(den)) return zdeg(rem) < 0;
  quo.assign(static_cast<std::size_t>(zdeg(rem) - zdeg(den) + 1), Int(0));
  for (int i = zdeg(rem); i >= zdeg(den); --i) {
    Int c = rem[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (den.back() != 1) {
      if (c % den.back() != 0) return false;
      c /= den.back();
    }
    quo[static_cast<std::size_t>(i - zdeg(den))] = c;
    for (int j = 0; j <= zdeg(den); ++j)
      rem[static_cast<std::size_t>(i - zdeg(den) + j)] -= c * den[static_cast<std::size_t>(j)];
  }
  ztrim(rem);
  return rem.empty();
}

// --- arithmetic in F_p[x], p a small odd prime --------------------------------

using PPoly = std::vector<std::uint64_t>;

void ptrim(PPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

PPoly pmulmod(const PPoly& a, const PPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  ptrim(r);
  return r;
}

std::uint64_t pinv(std::uint64_t a, std::uint64_t p) {
  // Fermat: a^(p-2) mod p
  std::uint64_t r = 1, e = p - 2, base = a % p;
  while (e) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r;
}

PPoly pdivrem(PPoly a, const PPoly& b, std::uint64_t p, PPoly* quo_out = nullptr) {
  PPoly quo;
  ptrim(a);
  int db = static_cast<int>(b.size()) - 1;
  std::uint64_t binv = pinv(b.back(), p);
  if (static_cast<int>(a.size()) - 1 >= db)
    quo.assign(a.size() - b.size() + 1, 0);
  for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
    std::uint64_t c = a[static_cast<std::size_t>(i)] % p;
    if (c == 0) continue;
    std::uint64_t f = c * binv % p;
    quo[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) {
      auto& t = a[static_cast<std::size_t>(i - db + j)];
      t = (t + p * p - f * b[static_cast<std::size_t>(j)] % p) % p;
    }
  }
  ptrim(a);
  if (quo_out) *quo_out = quo;
  return a;
}

PPoly pgcd(PPoly a, PPoly b, std::uint64_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    PPoly r = pdivrem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::uint64_t inv = pinv(a.back(), p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

PPoly ppowmod_x(std::uint64_t e, const PPoly& mod, std::uint64_t p) {
  // x^e mod (mod)
  PPoly result{1}, base{0, 1};
  base = pdivrem(base, mod, p);
  while (e) {
    if (e & 1) result = pdivrem(pmulmod(result, base, p), mod, p);
    base = pdivrem(pmulmod(base, base, p), mod, p);
    e >>= 1;
  }
  return result;
}

// Berlekamp factorization of a squarefree monic f over F_p. Returns monic factors.
std::vector<PPoly> berlekamp(const PPoly& f, std::uint64_t p) {
  int n = static_cast<int>(f.size()) - 1;
  // Build Q: row i = coefficients of x^(p*i) mod f.
  std::vector<std::vector<std::uint64_t>> Q(static_cast<std::size_t>(n),
                                            std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
  PPoly xp = ppowmod_x(p, f, p);  // x^p mod f
  PPoly cur{1};
  for (int i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cur.size(); ++j) Q[static_cast<std::size_t>(i)][j] = cur[j];
    cur = pdivrem(pmulmod(cur, xp, p), f, p);
  }
  // Kernel of (Q - I)^T applied to row vectors: we want v with v*Q = v, i.e.
  // (Q^T - I) v = 0 treating v as column.
  std::vector<std::vector<std::uint64_t>> M(static_cast<std::size_t>(n),
                                            std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::uint64_t v = Q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] % p;
      if (i == j) v = (v + p - 1) % p;
      M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    }
  // Gaussian elimination; collect kernel basis.
  std::vector<int> pivot_col_of_row;
  int row = 0;
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int col = 0; col < n && row < n; ++col) {
    int pr = -1;
    for (int r = row; r < n; ++r)
      if (M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) { pr = r; break; }
    if (pr < 0) continue;
    std::swap(M[static_cast<std::size_t>(pr)], M[static_cast<std::size_t>(row)]);
    std::uint64_t inv = pinv(M[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)], p);
    for (int j = 0; j < n; ++j)
      M[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] =
          M[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] * inv % p;
    for (int r = 0; r < n; ++r) {
      if (r == row) continue;
      std::uint64_t f2 = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (!f2) continue;
      for (int j = 0; j < n; ++j) {
        auto& t = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        t = (t + p * p - f2 * M[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] % p) % p;
      }
    }
    pivot_col_of_row.push_back(col);
    is_pivot[static_cast<std::size_t>(col)] = true;
    ++row;
  }
  std::vector<PPoly> basis;
  for (int col = 0; col < n; ++col) {
    if (is_pivot[static_cast<std::size_t>(col)]) continue;
    PPoly v(static_cast<std::size_t>(n), 0);
    v[static_cast<std::size_t>(col)] = 1;
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) {
      std::uint64_t val = M[r][static_cast<std::size_t>(col)];
      if (val) v[static_cast<std::size_t>(pivot_col_of_row[r])] = (p - val) % p;
    }
    ptrim(v);
    basis.push_back(v);
  }
  std::size_t nfactors = basis.size();
  std::vector<PPoly> factors{f};
  if (nfactors <= 1) return factors;
  for (const auto& w : basis) {
    if (factors.size() == nfactors) break;
    if (w.size() <= 1) continue;  // skip the constant subalgebra element
    for (std::uint64_t c = 0; c < p && factors.size() < nfactors; ++c) {
      PPoly wc = w;
      if (wc.empty()) wc.push_back(0);
      wc[0] = (wc[0] + p - c) % p;
      ptrim(wc);
      std::vector<PPoly> next;
      for (const auto& g : factors) {
        PPoly d = pgcd(g, wc, p);
        if (d.size() > 1 && d.size() < g.size()) {
          PPoly q;
          pdivrem(g, d, p, &q);
          next.push_back(d);
          next.push_back(q);
        } else {
          next.push_back(g);
        }
      }
      factors = std::move(next);
    }
  }
  return factors;
}

// Symmetric remainder in (-m/2, m/2].
Int symmetric_mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

struct HenselPair {
  ZPoly g, h;  // f = g*h mod m
};

// One quadratic Hensel step: given f = g*h (mod m), s*g + t*h = 1 (mod m0),
// with m | m0^2, lift g,h to mod m*m0... We use the classical linear lift with
// fixed Bezout data mod p, iterating modulus p^k -> p^(k+1). Adequate at degree <= 8.
void hensel_lift_linear(const ZPoly& f, ZPoly& g, ZPoly& h, const ZPoly& s, const ZPoly& t,
                        const Int& p, int steps) {
  Int m = p;
  auto mul = [](const ZPoly& a, const ZPoly& b) { return zmul(a, b); };
  auto mod_reduce = [](ZPoly a, const Int& mm) {
    for (auto& c : a) { c %= mm; if (c < 0) c += mm; }
    ztrim(a);
    return a;
  };
  // divide-with-remainder by monic divisor over Z/mZ
  auto divrem_monic = [&](ZPoly a, const ZPoly& d, const Int& mm, ZPoly* quo) {
    ztrim(a);
    if (quo) quo->clear();
    if (zdeg(a) >= zdeg(d) && quo) quo->assign(static_cast<std::size_t>(zdeg(a) - zdeg(d) + 1), Int(0));
    for (int i = zdeg(a); i >= zdeg(d); --i) {
      Int c = a[static_cast<std::size_t>(i)] % mm;
      if (c < 0) c += mm;
      if (c == 0) continue;
      if (quo) (*quo)[static_cast<std::size_t>(i - zdeg(d))] = c;
      for (int j = 0; j <= zdeg(d); ++j) {
        auto& v = a[static_cast<std::size_t>(i - zdeg(d) + j)];
        v = (v - c * d[static_cast<std::size_t>(j)]) % mm;
        if (v < 0) v += mm;
      }
    }
    return mod_reduce(std::move(a), mm);
  };
  for (int step = 0; step < steps; ++step) {
    Int m2 = m * p;
    // e = f - g*h (mod m2); e is divisible by m.
    ZPoly gh = mul(g, h);
    ZPoly e(std::max(f.size(), gh.size()), Int(0));
    for (std::size_t i = 0; i < f.size(); ++i) e[i] += f[i];
    for (std::size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
    e = mod_reduce(std::move(e), m2);
    // g' = g + (t*e mod g) ; h' = h + (s*e mod h)  -- all mod m2 (h monic, g monic)
    ZPoly te = mod_reduce(mul(t, e), m2);
    ZPoly se = mod_reduce(mul(s, e), m2);
    ZPoly dg = divrem_monic(te, g, m2, nullptr);
    ZPoly dh = divrem_monic(se, h, m2, nullptr);
    ZPoly g2(std::max(g.size(), dg.size()), Int(0));
    for (std::size_t i = 0; i < g.size(); ++i) g2[i] += g[i];
    for (std::size_t i = 0; i < dg.size(); ++i) g2[i] += dg[i];
    ZPoly h2(std::max(h.size(), dh.size()), Int(0));
    for (std::size_t i = 0; i < h.size(); ++i) h2[i] += h[i];
    for (std::size_t i = 0; i < dh.size(); ++i) h2[i] += dh[i];
    g = mod_reduce(std::move(g2), m2);
    h = mod_reduce(std::move(h2), m2);
    m = m2;
  }
}

// Extended Euclid in F_p[x]: s*a + t*b = 1 (a, b coprime mod p).
void pbezout(const PPoly& a, const PPoly& b, std::uint64_t p, PPoly& s, PPoly& t) {
  PPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  ptrim(r0); ptrim(r1);
  while (!r1.empty()) {
    PPoly q;
    PPoly r2 = pdivrem(r0, r1, p, &q);
    auto comb = [&](const PPoly& x0, const PPoly& x1) {
      PPoly qx = pmulmod(q, x1, p);
      PPoly res(std::max(x0.size(), qx.size()), 0);
      for (std::size_t i = 0; i < x0.size(); ++i) res[i] = x0[i];
      for (std::size_t i = 0; i < qx.size(); ++i) res[i] = (res[i] + p - qx[i] % p) % p;
      ptrim(res);
      return res;
    };
    PPoly s2 = comb(s0, s1), t2 = comb(t0, t1);
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  // normalize so r0 = 1
  std::uint64_t inv = pinv(r0.back(), p);
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  s = s0;
  t = t0;
}

}  // namespace

bool is_irreducible_over_Q(const Poly& p_in) {
  int m = p_in.degree();
  if (m <= 0) return false;
  if (m == 1) return true;
  // A repeated factor means reducible (char 0).
  if (poly_gcd(p_in, p_in.derivative()).degree() > 0) return false;

  // Monic integer model: g(y) = c^m p(y/c), c = lcm of coefficient denominators.
  Int c(1);
  for (const auto& a : p_in.coeffs()) c = lcm(c, denominator(a));
  ZPoly g(static_cast<std::size_t>(m) + 1);
  Int cpow(1);
  for (int i = m; i >= 0; --i) {
    Rat b = p_in.coeff(i) * Rat(cpow);
    g[static_cast<std::size_t>(i)] = numerator(b);
    cpow *= c;
  }

  // Find a prime with squarefree reduction.
  std::uint64_t prime = 0;
  PPoly gp;
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL,
                          37ULL, 41ULL, 43ULL, 47ULL, 53ULL, 59ULL, 61ULL, 67ULL, 71ULL, 73ULL,
                          79ULL, 83ULL, 89ULL, 97ULL, 101ULL, 103ULL, 107ULL, 109ULL, 113ULL}) {
    PPoly cand(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      Int r = g[i] % Int(p);
      if (r < 0) r += Int(p);
      cand[i] = r.convert_to<std::uint64_t>();
    }
    ptrim(cand);
    if (static_cast<int>(cand.size()) - 1 != m) continue;  // p | lc impossible (monic) but be safe
    PPoly d(cand.size() - 1);
    for (std::size_t i = 1; i < cand.size(); ++i) d[i - 1] = cand[i] * (i % p) % p;
    ptrim(d);
    if (d.empty()) continue;
    if (pgcd(cand, d, p).size() == 1) {
      prime = p;
      gp = cand;
      break;
    }
  }
  if (prime == 0)
    fail(ErrorCode::ParseError, "no squarefree modular reduction found (degree cap 8 exceeded?)");

  std::vector<PPoly> pfactors = berlekamp(gp, prime);
  if (pfactors.size() == 1) return true;

  // Mignotte-style bound on factor coefficients: 2^m * ||g||_2.
  Int norm2(0);
  for (const auto& a : g) norm2 += a * a;
  Int bound = (Int(1) << m) * (sqrt(norm2) + 1);
  Int pk(prime);
  int steps = 0;
  while (pk <= 2 * bound) { pk *= Int(prime); ++steps; }

  // Lift each modular factor against the product of the others.
  std::vector<ZPoly> lifted;
  {
    // recursive split: lift f = A*B where A = product of first half, B = rest
    struct Lifter {
      Int p;
      int steps;
      std::uint64_t prime;
      std::vector<ZPoly> out;
      void run(const ZPoly& f, std::vector<PPoly> facs) {
        if (facs.size() == 1) {
          out.push_back(f);
          return;
        }
        std::size_t half = facs.size() / 2;
        PPoly A{1}, B{1};
        std::vector<PPoly> la(facs.begin(), facs.begin() + static_cast<long>(half));
        std::vector<PPoly> lb(facs.begin() + static_cast<long>(half), facs.end());
        for (const auto& x : la) A = pmulmod(A, x, prime);
        for (const auto& x : lb) B = pmulmod(B, x, prime);
        PPoly s, t;
        pbezout(A, B, prime, s, t);
        auto toz = [](const PPoly& x) {
          ZPoly r(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) r[i] = Int(x[i]);
          return r;
        };
        ZPoly Az = toz(A), Bz = toz(B), sz = toz(s), tz = toz(t);
        hensel_lift_linear(f, Az, Bz, sz, tz, p, steps);
        run(Az, la);
        run(Bz, lb);
      }
    } lifter{Int(prime), steps, prime, {}};
    lifter.run(g, pfactors);
    lifted = std::move(lifter.out);
  }

  // Recombination: try subsets of lifted factors as true divisors.
  std::size_t r = lifted.size();
  for (std::size_t size = 1; size <= r / 2; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      ZPoly prod{Int(1)};
      for (std::size_t i : idx) prod = zmul(prod, lifted[i]);
      for (auto& coeff : prod) coeff = symmetric_mod(coeff, pk);
      ztrim(prod);
      ZPoly quo;
      if (!prod.empty() && prod.back() == 1 && zdeg(prod) < m && zdivide_exact(g, prod, quo))
        return false;  // found a proper factor
      // next combination
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == r - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return true;
}

}  // namespace qfan
