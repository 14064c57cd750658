#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cstdint>
#include <string>
#include <vector>

#include "workbench/error.hpp"
#include "workbench/rng.hpp"

namespace workbench {

inline constexpr long kValInf = LONG_MAX / 4;

// ---------------------------------------------------------------------------
// small helpers
// ---------------------------------------------------------------------------

inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline uint64_t pow_u64(uint64_t b, unsigned e) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline long mpz_p_valuation(const mpz_class& x, unsigned long p) {
  if (x == 0) return kValInf;
  mpz_class tmp;
  mpz_class pp(static_cast<unsigned long>(p));
  return static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

// modular inverse for word-sized moduli
inline uint64_t inv_mod_u64(uint64_t x, uint64_t mod) {
  int64_t t = 0, new_t = 1;
  int64_t r = static_cast<int64_t>(mod), new_r = static_cast<int64_t>(x % mod);
  while (new_r != 0) {
    int64_t q = r / new_r;
    std::swap(t -= q * new_t, new_t);
    std::swap(r -= q * new_r, new_r);
  }
  require(r == 1, errc::non_unit_division, "element not invertible mod " + std::to_string(mod));
  return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(mod) : t);
}

// ---------------------------------------------------------------------------
// Rationals: the field Q (exact, GMP-backed)
// ---------------------------------------------------------------------------

struct Rationals {
  using Elem = mpq_class;
  static constexpr bool is_field = true;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long n) const { return Elem(n); }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  bool is_unit(const Elem& a) const { return a != 0; }
  Elem inv(const Elem& a) const {
    require(a != 0, errc::non_unit_division, "division by zero in Q");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem random(Rng& rng) const {
    long n = static_cast<long>(rng.below(21)) - 10;
    long d = static_cast<long>(rng.below(9)) + 1;
    Elem e(n, d);
    e.canonicalize();
    return e;
  }
  std::string to_string(const Elem& a) const {
    if (a.get_den() == 1) return a.get_num().get_str();
    return a.get_num().get_str() + "/" + a.get_den().get_str();
  }
  std::string name() const { return "Q"; }
};

// ---------------------------------------------------------------------------
// PLocal: R = Z_(p), rationals with denominator prime to p.  A DVR with
// uniformizer p; valuation, unit tests and mod-p reduction are exact.
// ---------------------------------------------------------------------------

struct PLocal {
  using Elem = mpq_class;
  static constexpr bool is_field = false;

  PLocal() : PLocal(2) {}
  explicit PLocal(unsigned long p_) : p(p_) {
    require(is_prime_u64(p_), errc::bad_input, "p must be prime");
  }

  unsigned long p;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long n) const { return Elem(n); }

  // Elements range over K = Quot(R); membership in R itself is the
  // valuation >= 0 predicate, checked where an operation requires it.
  Elem make(const mpz_class& num, const mpz_class& den) const {
    require(den != 0, errc::bad_input, "zero denominator");
    Elem e(num, den);
    e.canonicalize();
    return e;
  }
  bool in_ring(const Elem& a) const { return a == 0 || val(a) >= 0; }
  void check(const Elem& a) const {
    require(in_ring(a), errc::negative_valuation, "element has p in denominator, not in Z_(p)");
  }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }

  long val(const Elem& a) const {
    if (a == 0) return kValInf;
    return mpz_p_valuation(a.get_num(), p) - mpz_p_valuation(a.get_den(), p);
  }
  bool is_unit(const Elem& a) const { return a != 0 && val(a) == 0; }
  Elem inv(const Elem& a) const {
    require(is_unit(a), errc::non_unit_division, "not a unit in Z_(p)");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  long val_cap() const { return kValInf; }
  Elem pow_uniformizer(long k) const {
    Elem e;
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k >= 0 ? k : -k));
    return k >= 0 ? Elem(pk) : Elem(mpz_class(1), pk);
  }
  // exact quotient a/b assuming val(a) >= val(b)
  Elem div_exact(const Elem& a, const Elem& b) const {
    require(b != 0 && (a == 0 || val(a) >= val(b)), errc::non_unit_division, "inexact division");
    Elem q = a / b;
    check(q);
    return q;
  }

  // image in F_p = R/(p), as a residue in [0, p)
  uint64_t reduce_mod_p(const Elem& a) const {
    require(val(a) >= 0, errc::negative_valuation, "element is not p-integral");
    uint64_t n = mpz_fdiv_ui(a.get_num().get_mpz_t(), p);
    uint64_t d = mpz_fdiv_ui(a.get_den().get_mpz_t(), p);
    return n * inv_mod_u64(d, p) % p;
  }

  Elem random(Rng& rng) const {
    long n = static_cast<long>(rng.below(41)) - 20;
    long d;
    do {
      d = static_cast<long>(rng.below(12)) + 1;
    } while (d % static_cast<long>(p) == 0);
    Elem e(n, d);
    e.canonicalize();
    return e;
  }
  std::string to_string(const Elem& a) const {
    if (a.get_den() == 1) return a.get_num().get_str();
    return a.get_num().get_str() + "/" + a.get_den().get_str();
  }
  std::string name() const { return "Z_(" + std::to_string(p) + ")"; }
};

// ---------------------------------------------------------------------------
// dense polynomials over F_p with word coefficients (internal; used for the
// F_q modulus search and F_q element arithmetic)
// ---------------------------------------------------------------------------

namespace fppoly {

using Poly = std::vector<uint64_t>;  // coefficient i at index i, trimmed

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
inline Poly add(const Poly& a, const Poly& b, uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint64_t x = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = x % p;
  }
  trim(r);
  return r;
}
inline Poly scale(const Poly& a, uint64_t c, uint64_t p) {
  Poly r(a);
  for (auto& x : r) x = x * c % p;
  trim(r);
  return r;
}
inline Poly mul(const Poly& a, const Poly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}
inline Poly mod(Poly a, const Poly& f, uint64_t p) {
  trim(a);
  uint64_t lead_inv = inv_mod_u64(f.back(), p);
  while (a.size() >= f.size()) {
    uint64_t c = a.back() * lead_inv % p;
    size_t shift = a.size() - f.size();
    for (size_t i = 0; i < f.size(); ++i) {
      uint64_t s = c * f[i] % p;
      a[shift + i] = (a[shift + i] + p - s) % p;
    }
    trim(a);
  }
  return a;
}
inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f, uint64_t p) {
  return mod(mul(a, b, p), f, p);
}
inline Poly powmod(Poly base, mpz_class e, const Poly& f, uint64_t p) {
  Poly r{1};
  base = mod(std::move(base), f, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mulmod(r, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}
inline Poly gcd(Poly a, Poly b, uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = scale(a, inv_mod_u64(a.back(), p), p);
  return a;
}

inline bool is_irreducible(const Poly& f, uint64_t p) {
  size_t s = f.size() - 1;
  if (s == 0) return false;
  if (s == 1) return true;
  Poly x{0, 1};
  // x^(p^s) == x mod f
  mpz_class ps;
  mpz_ui_pow_ui(ps.get_mpz_t(), p, s);
  if (powmod(x, ps, f, p) != mod(x, f, p)) return false;
  for (uint64_t l = 2; l <= s; ++l) {
    if (!is_prime_u64(l) || s % l != 0) continue;
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, s / l);
    Poly xe = powmod(x, e, f, p);
    // gcd(x^(p^(s/l)) - x, f) must be 1
    Poly diff = add(xe, scale(x, p - 1, p), p);
    if (gcd(diff, f, p).size() != 1) return false;
  }
  return true;
}

}  // namespace fppoly

// ---------------------------------------------------------------------------
// Fq: the finite field F_{p^s}, elements packed as 8-bit coefficient lanes of
// a polynomial over F_p modulo a fixed irreducible, found by deterministic
// lexicographic search (lowest coefficient vector first).
// ---------------------------------------------------------------------------

struct Fq {
  using Elem = uint64_t;
  static constexpr bool is_field = true;

  unsigned long p;
  unsigned s;
  uint64_t q;
  fppoly::Poly modulus;  // monic, degree s

  Fq() : Fq(2, 1) {}
  explicit Fq(unsigned long p_, unsigned s_ = 1) : p(p_), s(s_) {
    require(is_prime_u64(p_) && p_ < 256, errc::bad_input, "p must be a prime < 256");
    require(s_ >= 1 && s_ <= 7, errc::unsupported_order, "extension degree must be in [1,7]");
    q = pow_u64(p, s);
    if (s == 1) {
      modulus = {0, 1};
      return;
    }
    // monic x^s + c_{s-1} x^{s-1} + ... + c_0, coefficient vectors in
    // increasing base-p order, constant term first
    for (uint64_t k = 0;; ++k) {
      fppoly::Poly f(s + 1, 0);
      uint64_t t = k;
      for (unsigned i = 0; i < s; ++i) {
        f[i] = t % p;
        t /= p;
      }
      require(t == 0, errc::bad_input, "no irreducible found");
      f[s] = 1;
      if (f[0] != 0 && fppoly::is_irreducible(f, p)) {
        modulus = f;
        break;
      }
    }
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long n) const {
    long r = n % static_cast<long>(p);
    if (r < 0) r += static_cast<long>(p);
    return static_cast<Elem>(r);
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  // generator of the extension (the class of x); equals 0 when s == 1
  Elem gen() const { return s > 1 ? (1ULL << 8) : 0; }

  fppoly::Poly unpack(Elem a) const {
    fppoly::Poly f;
    for (unsigned i = 0; i < s; ++i) {
      uint64_t c = (a >> (8 * i)) & 0xff;
      f.push_back(c);
    }
    fppoly::trim(f);
    return f;
  }
  Elem pack(const fppoly::Poly& f) const {
    Elem a = 0;
    for (size_t i = 0; i < f.size(); ++i) a |= (f[i] & 0xff) << (8 * i);
    return a;
  }

  Elem add(Elem a, Elem b) const {
    Elem r = 0;
    for (unsigned i = 0; i < s; ++i) {
      uint64_t c = ((a >> (8 * i)) & 0xff) + ((b >> (8 * i)) & 0xff);
      r |= (c % p) << (8 * i);
    }
    return r;
  }
  Elem neg(Elem a) const {
    Elem r = 0;
    for (unsigned i = 0; i < s; ++i) {
      uint64_t c = (a >> (8 * i)) & 0xff;
      r |= ((p - c) % p) << (8 * i);
    }
    return r;
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (s == 1) return (a * b) % p;
    if (a == 0 || b == 0) return 0;
    return pack(fppoly::mulmod(unpack(a), unpack(b), modulus, p));
  }
  bool is_unit(const Elem& a) const { return a != 0; }
  Elem inv(Elem a) const {
    require(a != 0, errc::non_unit_division, "division by zero in " + name());
    if (s == 1) return inv_mod_u64(a, p);
    // extended Euclid over F_p[x]
    fppoly::Poly r0 = modulus, r1 = unpack(a), t0 = {}, t1 = {1};
    while (!r1.empty()) {
      // r0 = q*r1 + rem
      fppoly::Poly q;
      {
        fppoly::Poly rem = r0;
        uint64_t li = inv_mod_u64(r1.back(), p);
        q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, 0);
        while (rem.size() >= r1.size() && !rem.empty()) {
          uint64_t c = rem.back() * li % p;
          size_t shift = rem.size() - r1.size();
          q[shift] = c;
          for (size_t i = 0; i < r1.size(); ++i) {
            uint64_t sub_ = c * r1[i] % p;
            rem[shift + i] = (rem[shift + i] + p - sub_) % p;
          }
          fppoly::trim(rem);
        }
        r0 = std::move(rem);
        fppoly::trim(q);
      }
      std::swap(r0, r1);
      fppoly::Poly qt1 = fppoly::mul(q, t1, p);
      fppoly::Poly nt = fppoly::add(t0, fppoly::scale(qt1, p - 1, p), p);
      t0 = std::move(t1);
      t1 = std::move(nt);
    }
    require(r0.size() == 1, errc::non_unit_division, "gcd not constant");
    return pack(fppoly::scale(fppoly::mod(t0, modulus, p), inv_mod_u64(r0[0], p), p));
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, mpz_class e) const {
    Elem r = 1;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Elem frobenius(Elem a, unsigned k = 1) const {  // x -> x^(p^k)
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, k % s == 0 && k > 0 ? s : k % s);
    if (k % s == 0) return a;
    return pow(a, e);
  }
  Elem frobenius_inv(Elem a, unsigned k = 1) const { return frobenius(a, s - (k % s)); }
  Elem pth_root(Elem a) const { return frobenius(a, s - 1); }

  // index <-> element bijection for exhaustive loops over small fields
  Elem from_index(uint64_t k) const {
    fppoly::Poly f;
    for (unsigned i = 0; i < s; ++i) {
      f.push_back(k % p);
      k /= p;
    }
    fppoly::trim(f);
    return pack(f);
  }
  uint64_t to_index(Elem a) const {
    uint64_t k = 0;
    for (unsigned i = s; i-- > 0;) k = k * p + ((a >> (8 * i)) & 0xff);
    return k;
  }

  Elem random(Rng& rng) const { return from_index(rng.below(q)); }

  std::string to_string(Elem a) const {
    if (s == 1) return std::to_string(a);
    if (a == 0) return "0";
    std::string out;
    for (unsigned i = 0; i < s; ++i) {
      uint64_t c = (a >> (8 * i)) & 0xff;
      if (c == 0) continue;
      if (!out.empty()) out += "+";
      if (i == 0)
        out += std::to_string(c);
      else {
        if (c != 1) out += std::to_string(c) + "*";
        out += (i == 1) ? "w" : "w^" + std::to_string(i);
      }
    }
    return out;
  }
  std::string name() const { return "F_" + std::to_string(q); }
};

// ---------------------------------------------------------------------------
// Zpa: the residue ring Z/p^a, a local principal ideal ring with uniformizer
// p and valuations capped at a.
// ---------------------------------------------------------------------------

struct Zpa {
  using Elem = uint64_t;
  static constexpr bool is_field = false;

  unsigned long p;
  unsigned a;
  uint64_t pa;

  Zpa() : Zpa(2, 1) {}
  Zpa(unsigned long p_, unsigned a_) : p(p_), a(a_) {
    require(is_prime_u64(p_), errc::bad_input, "p must be prime");
    require(a_ >= 1, errc::bad_input, "a must be >= 1");
    pa = 1;
    for (unsigned i = 0; i < a; ++i) {
      require(pa <= (1ULL << 31) / p, errc::unsupported_order, "p^a too large");
      pa *= p;
    }
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % pa; }
  Elem from_int(long n) const {
    long r = n % static_cast<long>(pa);
    if (r < 0) r += static_cast<long>(pa);
    return static_cast<Elem>(r);
  }
  bool is_zero(const Elem& x) const { return x == 0; }
  bool eq(const Elem& x, const Elem& y) const { return x == y; }
  Elem add(Elem x, Elem y) const { return (x + y) % pa; }
  Elem sub(Elem x, Elem y) const { return (x + pa - y) % pa; }
  Elem mul(Elem x, Elem y) const { return (x * y) % pa; }
  Elem neg(Elem x) const { return (pa - x) % pa; }

  long val(Elem x) const {  // capped at a; val(0) = a
    if (x == 0) return static_cast<long>(a);
    long v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  }
  long val_cap() const { return static_cast<long>(a); }
  bool is_unit(Elem x) const { return x % p != 0; }
  Elem inv(Elem x) const {
    require(is_unit(x), errc::non_unit_division, "not a unit in " + name());
    return inv_mod_u64(x, pa);
  }
  Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
  Elem pow_uniformizer(long k) const {
    require(k >= 0, errc::bad_input, "negative uniformizer power in Z/p^a");
    return k >= static_cast<long>(a) ? 0 : pow_u64(p, static_cast<unsigned>(k)) % pa;
  }
  Elem div_exact(Elem x, Elem y) const {
    long vy = val(y);
    require(y != 0 && (x == 0 || val(x) >= vy), errc::precision_exhausted, "inexact division in Z/p^a");
    Elem xs = x / pow_u64(p, static_cast<unsigned>(vy));
    Elem yu = y / pow_u64(p, static_cast<unsigned>(vy));
    return mul(xs, inv_mod_u64(yu, pa));
  }

  uint64_t reduce_mod_p(Elem x) const { return x % p; }
  Elem random(Rng& rng) const { return rng.below(pa); }
  std::string to_string(Elem x) const { return std::to_string(x); }
  std::string name() const { return "Z/" + std::to_string(p) + "^" + std::to_string(a); }
};

// ---------------------------------------------------------------------------
// Trunc: truncated power/Laurent series over Z/p^a (a = 1 gives F_p
// coefficients).  Exponents live in [v, m); Laurent mode admits negative
// valuations down to -floor and raises PrecisionUnderflow past it.
// ---------------------------------------------------------------------------

struct TruncEl {
  long v = 0;
  std::vector<uint64_t> c;  // c[i] is the coefficient of T^(v+i); c[0] != 0 unless zero
  bool operator==(const TruncEl& o) const { return v == o.v && c == o.c; }
};

struct Trunc {
  using Elem = TruncEl;
  // Laurent mode over F_p is treated as a field at working precision
  bool is_field_mode() const { return laurent && base.a == 1; }
  static constexpr bool is_field = false;

  Zpa base;
  long m;        // exponents < m
  bool laurent;  // allow negative exponents
  long floor_;   // valuations >= -floor_ (Laurent only)

  Trunc() : Trunc(2, 1, 1) {}
  Trunc(unsigned long p, unsigned a, long m_, bool laurent_ = false, long floor_val = -1)
      : base(p, a), m(m_), laurent(laurent_), floor_(floor_val < 0 ? m_ : floor_val) {
    require(m_ >= 1, errc::bad_input, "T-precision must be >= 1");
  }

  unsigned long p() const { return base.p; }

  Elem zero() const { return {}; }
  Elem canon(long v, std::vector<uint64_t> c) const {
    size_t lead = 0;
    while (lead < c.size() && c[lead] == 0) ++lead;
    if (lead > 0) {
      v += static_cast<long>(lead);
      c.erase(c.begin(), c.begin() + static_cast<long>(lead));
    }
    if (v + static_cast<long>(c.size()) > m) c.resize(static_cast<size_t>(m - v));
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) return {};
    if (!laurent) require(v >= 0, errc::precision_underflow, "negative exponent in power-series mode");
    require(v >= -floor_, errc::precision_underflow, "valuation below configured floor");
    return {v, std::move(c)};
  }
  Elem one() const { return canon(0, {1 % base.pa}); }
  Elem from_int(long n) const { return canon(0, {base.from_int(n)}); }
  // the series c * T^k
  Elem monomial(long k, uint64_t coeff = 1) const { return canon(k, {coeff % base.pa}); }

  bool is_zero(const Elem& x) const { return x.c.empty(); }
  bool eq(const Elem& x, const Elem& y) const { return x == y; }

  Elem add(const Elem& x, const Elem& y) const {
    if (x.c.empty()) return y;
    if (y.c.empty()) return x;
    long v = std::min(x.v, y.v);
    size_t len = static_cast<size_t>(std::max(x.v + static_cast<long>(x.c.size()),
                                              y.v + static_cast<long>(y.c.size())) -
                                     v);
    std::vector<uint64_t> c(len, 0);
    for (size_t i = 0; i < x.c.size(); ++i) c[static_cast<size_t>(x.v - v) + i] = x.c[i];
    for (size_t i = 0; i < y.c.size(); ++i) {
      size_t j = static_cast<size_t>(y.v - v) + i;
      c[j] = base.add(c[j], y.c[i]);
    }
    return canon(v, std::move(c));
  }
  Elem neg(const Elem& x) const {
    Elem r = x;
    for (auto& ci : r.c) ci = base.neg(ci);
    return r;
  }
  Elem sub(const Elem& x, const Elem& y) const { return add(x, neg(y)); }
  Elem mul(const Elem& x, const Elem& y) const {
    if (x.c.empty() || y.c.empty()) return {};
    long v = x.v + y.v;
    if (v >= m) return {};
    size_t len = std::min(x.c.size() + y.c.size() - 1, static_cast<size_t>(m - v));
    std::vector<uint64_t> c(len, 0);
    for (size_t i = 0; i < x.c.size() && i < len; ++i) {
      if (x.c[i] == 0) continue;
      size_t jmax = std::min(y.c.size(), len - i);
      for (size_t j = 0; j < jmax; ++j) c[i + j] = (c[i + j] + x.c[i] * y.c[j]) % base.pa;
    }
    return canon(v, std::move(c));
  }

  long val(const Elem& x) const { return x.c.empty() ? kValInf : x.v; }
  long val_cap() const { return m; }

  bool is_unit(const Elem& x) const {
    if (x.c.empty()) return false;
    if (laurent) return base.is_unit(x.c[0]);
    return x.v == 0 && base.is_unit(x.c[0]);
  }
  Elem inv(const Elem& x) const {
    require(!x.c.empty(), errc::non_unit_division, "division by zero series");
    require(base.is_unit(x.c[0]), errc::non_unit_division, "leading coefficient not a unit");
    require(laurent || x.v == 0, errc::non_unit_division, "positive valuation series not invertible");
    long v = -x.v;
    require(v >= -floor_, errc::precision_underflow, "inverse valuation below floor");
    size_t len = static_cast<size_t>(m - v);
    std::vector<uint64_t> b(len, 0);
    uint64_t u = base.inv(x.c[0]);
    b[0] = u;
    for (size_t k = 1; k < len; ++k) {
      uint64_t acc = 0;
      for (size_t j = 1; j <= k && j < x.c.size(); ++j) acc = (acc + x.c[j] * b[k - j]) % base.pa;
      b[k] = base.mul(u, base.neg(acc));
    }
    return canon(v, std::move(b));
  }
  Elem div(const Elem& x, const Elem& y) const { return mul(x, inv(y)); }
  Elem pow_uniformizer(long k) const {
    if (k >= m) return {};
    return monomial(k);
  }
  Elem div_exact(const Elem& x, const Elem& y) const {
    if (x.c.empty()) return {};
    require(!y.c.empty() && x.v >= y.v, errc::non_unit_division, "inexact series division");
    require(base.is_unit(y.c[0]), errc::precision_exhausted, "pivot unit part not invertible");
    Elem ys = y;
    ys.v = 0;
    Elem xs = x;
    xs.v -= y.v;
    return mul(xs, inv(ys));
  }

  Elem pow(Elem a, long e) const {
    require(e >= 0 || is_unit(a) || is_field_mode(), errc::non_unit_division, "negative power of non-unit");
    if (e < 0) {
      a = inv(a);
      e = -e;
    }
    Elem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  // substitution T -> (1+T)^(-1) - 1, the effect of the sharp involution on
  // the series variable; negative exponents need Laurent mode
  Elem sharp_substitute(const Elem& x) const {
    if (x.c.empty()) return x;
    require(x.v >= 0 || laurent, errc::bad_input, "sharp substitution needs a power series");
    Elem timg = sub(inv(add(one(), monomial(1))), one());  // (1+T)^{-1} - 1 = -T + T^2 - ...
    Elem acc = zero();
    Elem tp = pow(timg, x.v);
    for (size_t i = 0; i < x.c.size(); ++i) {
      acc = add(acc, mul(monomial(0, x.c[i]), tp));
      tp = mul(tp, timg);
    }
    return acc;
  }

  Elem random(Rng& rng) const {
    std::vector<uint64_t> c;
    long v = laurent ? static_cast<long>(rng.below(7)) - 3 : static_cast<long>(rng.below(4));
    size_t len = 1 + rng.below(static_cast<uint64_t>(std::max<long>(1, m - v)));
    for (size_t i = 0; i < len; ++i) c.push_back(rng.below(base.pa));
    if (c[0] == 0) c[0] = 1;
    return canon(v, std::move(c));
  }

  std::string to_string(const Elem& x) const {
    if (x.c.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < x.c.size(); ++i) {
      if (x.c[i] == 0) continue;
      long e = x.v + static_cast<long>(i);
      if (!out.empty()) out += " + ";
      if (e == 0)
        out += std::to_string(x.c[i]);
      else {
        out += std::to_string(x.c[i]) + "*T^" + std::to_string(e);
      }
    }
    return out;
  }
  std::string name() const {
    std::string b = base.a == 1 ? "F_" + std::to_string(base.p) : "(" + base.name() + ")";
    return b + (laurent ? "((T))" : "[[T]]") + "@" + std::to_string(m);
  }
};

// is_pth_power: truncation-level certificate that a series over F_p is a p-th
// power.  Exact "false" whenever a non-p-divisible exponent carries a nonzero
// coefficient inside the window; "true" certifies at the working truncation
// (exact once m exceeds p times the first non-p-divisible exponent).  Over
// F_p every coefficient is automatically a p-th power.
inline bool is_pth_power(const Trunc& ctx, const TruncEl& x) {
  require(ctx.base.a == 1, errc::bad_input, "p-th power certificate needs F_p coefficients");
  require(!x.c.empty(), errc::bad_input, "p-th power certificate needs a nonzero series");
  long p = static_cast<long>(ctx.p());
  long window = ctx.m - x.v;
  require(window >= 2, errc::insufficient_precision,
          "window [v, m) too small to certify either way");
  for (size_t i = 0; i < x.c.size(); ++i) {
    if (x.c[i] == 0) continue;
    long e = x.v + static_cast<long>(i);
    long r = e % p;
    if (r < 0) r += p;
    if (r != 0) return false;
  }
  return true;
}

}  // namespace workbench
