#pragma once

#include <utility>
#include <vector>

#include "workbench/error.hpp"
#include "workbench/matrix.hpp"
#include "workbench/rings.hpp"
#include "workbench/rng.hpp"

namespace workbench {

// dense univariate polynomials over a field context; coefficient i at index i
template <typename R>
using PolyOf = std::vector<typename R::Elem>;

namespace polyops {

template <typename R>
void trim(const R& ring, PolyOf<R>& f) {
  while (!f.empty() && ring.is_zero(f.back())) f.pop_back();
}

template <typename R>
long degree(const PolyOf<R>& f) {
  return static_cast<long>(f.size()) - 1;
}

template <typename R>
PolyOf<R> add(const R& ring, const PolyOf<R>& a, const PolyOf<R>& b) {
  PolyOf<R> r(std::max(a.size(), b.size()), ring.zero());
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] = ring.add(r[i], a[i]);
    if (i < b.size()) r[i] = ring.add(r[i], b[i]);
  }
  trim(ring, r);
  return r;
}

template <typename R>
PolyOf<R> sub(const R& ring, const PolyOf<R>& a, const PolyOf<R>& b) {
  PolyOf<R> r(std::max(a.size(), b.size()), ring.zero());
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] = ring.add(r[i], a[i]);
    if (i < b.size()) r[i] = ring.sub(r[i], b[i]);
  }
  trim(ring, r);
  return r;
}

template <typename R>
PolyOf<R> mul(const R& ring, const PolyOf<R>& a, const PolyOf<R>& b) {
  if (a.empty() || b.empty()) return {};
  PolyOf<R> r(a.size() + b.size() - 1, ring.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (ring.is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = ring.add(r[i + j], ring.mul(a[i], b[j]));
  }
  trim(ring, r);
  return r;
}

template <typename R>
PolyOf<R> scale(const R& ring, const typename R::Elem& c, const PolyOf<R>& a) {
  PolyOf<R> r = a;
  for (auto& x : r) x = ring.mul(c, x);
  trim(ring, r);
  return r;
}

template <typename R>
std::pair<PolyOf<R>, PolyOf<R>> divmod(const R& ring, PolyOf<R> a, const PolyOf<R>& b) {
  require(!b.empty(), errc::non_unit_division, "polynomial division by zero");
  trim(ring, a);
  auto lead_inv = ring.inv(b.back());
  PolyOf<R> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, ring.zero());
  while (a.size() >= b.size()) {
    auto c = ring.mul(a.back(), lead_inv);
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] = ring.sub(a[shift + i], ring.mul(c, b[i]));
    trim(ring, a);
  }
  trim(ring, q);
  return {std::move(q), std::move(a)};
}

template <typename R>
PolyOf<R> mod(const R& ring, PolyOf<R> a, const PolyOf<R>& b) {
  return divmod(ring, std::move(a), b).second;
}

template <typename R>
PolyOf<R> monic(const R& ring, PolyOf<R> f) {
  trim(ring, f);
  if (f.empty()) return f;
  auto li = ring.inv(f.back());
  for (auto& c : f) c = ring.mul(li, c);
  return f;
}

template <typename R>
PolyOf<R> gcd(const R& ring, PolyOf<R> a, PolyOf<R> b) {
  trim(ring, a);
  trim(ring, b);
  while (!b.empty()) {
    auto r = mod(ring, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(ring, std::move(a));
}

template <typename R>
PolyOf<R> derivative(const R& ring, const PolyOf<R>& f) {
  PolyOf<R> r;
  for (size_t i = 1; i < f.size(); ++i) {
    auto c = f[i];
    typename R::Elem acc = ring.zero();
    for (size_t k = 0; k < i; ++k) acc = ring.add(acc, c);
    r.push_back(acc);
  }
  trim(ring, r);
  return r;
}

template <typename R>
PolyOf<R> mulmod(const R& ring, const PolyOf<R>& a, const PolyOf<R>& b, const PolyOf<R>& f) {
  return mod(ring, mul(ring, a, b), f);
}

template <typename R>
PolyOf<R> powmod(const R& ring, PolyOf<R> base, mpz_class e, const PolyOf<R>& f) {
  PolyOf<R> r{ring.one()};
  base = mod(ring, std::move(base), f);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mulmod(ring, r, base, f);
    base = mulmod(ring, base, base, f);
    e >>= 1;
  }
  return r;
}

template <typename R>
typename R::Elem eval(const R& ring, const PolyOf<R>& f, const typename R::Elem& x) {
  typename R::Elem acc = ring.zero();
  for (size_t i = f.size(); i-- > 0;) acc = ring.add(ring.mul(acc, x), f[i]);
  return acc;
}

// f(M) by Horner on matrices
template <typename R>
Matrix<typename R::Elem> eval_matrix(const R& ring, const PolyOf<R>& f,
                                     const Matrix<typename R::Elem>& M) {
  size_t n = M.rows;
  Matrix<typename R::Elem> acc(n, n, ring.zero());
  for (size_t i = f.size(); i-- > 0;) {
    acc = mat_mul(ring, acc, M);
    for (size_t d = 0; d < n; ++d) acc.at(d, d) = ring.add(acc.at(d, d), f[i]);
  }
  return acc;
}

}  // namespace polyops

// characteristic polynomial of a square matrix over a field, by Hessenberg
// reduction and the standard recurrence; exact, O(n^3) + O(n^2) poly work
template <typename R>
PolyOf<R> charpoly(const R& ring, Matrix<typename R::Elem> m) {
  require(m.rows == m.cols, errc::bad_input, "charpoly of non-square matrix");
  size_t n = m.rows;
  // Hessenberg form by similarity transforms
  for (size_t k = 0; n >= 3 && k < n - 2; ++k) {
    size_t piv = n;
    for (size_t i = k + 1; i < n; ++i) {
      if (!ring.is_zero(m.at(i, k))) {
        piv = i;
        break;
      }
    }
    if (piv == n) continue;
    if (piv != k + 1) {
      for (size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(k + 1, j));
      for (size_t i = 0; i < n; ++i) std::swap(m.at(i, piv), m.at(i, k + 1));
    }
    auto inv_piv = ring.inv(m.at(k + 1, k));
    for (size_t i = k + 2; i < n; ++i) {
      if (ring.is_zero(m.at(i, k))) continue;
      auto f = ring.mul(m.at(i, k), inv_piv);
      // row_i -= f * row_{k+1}; col_{k+1} += f * col_i  (similarity)
      for (size_t j = 0; j < n; ++j) m.at(i, j) = ring.sub(m.at(i, j), ring.mul(f, m.at(k + 1, j)));
      for (size_t i2 = 0; i2 < n; ++i2)
        m.at(i2, k + 1) = ring.add(m.at(i2, k + 1), ring.mul(f, m.at(i2, i)));
    }
  }
  // recurrence on leading principal minors of xI - H
  std::vector<PolyOf<R>> p(n + 1);
  p[0] = {ring.one()};
  for (size_t mdx = 1; mdx <= n; ++mdx) {
    // (x - H[m-1][m-1]) * p[m-1]
    PolyOf<R> t = polyops::mul(ring, PolyOf<R>{ring.neg(m.at(mdx - 1, mdx - 1)), ring.one()},
                               p[mdx - 1]);
    auto prod = ring.one();
    for (size_t i = mdx - 1; i-- > 0;) {
      prod = ring.mul(prod, m.at(i + 1, i));
      if (ring.is_zero(prod)) break;
      auto coeff = ring.mul(m.at(i, mdx - 1), prod);
      if (!ring.is_zero(coeff)) t = polyops::sub(ring, t, polyops::scale(ring, coeff, p[i]));
    }
    p[mdx] = std::move(t);
  }
  return p[n];
}

// minimal polynomial of a matrix over a field: first linear dependency among
// I, M, M^2, ... found by incremental elimination on flattened powers
template <typename R>
PolyOf<R> minpoly_matrix(const R& ring, const Matrix<typename R::Elem>& M) {
  require(M.rows == M.cols, errc::bad_input, "minpoly of non-square matrix");
  size_t n = M.rows, nn = n * n;
  std::vector<std::vector<typename R::Elem>> echelon;  // reduced rows
  std::vector<size_t> lead_of;                         // leading col per row
  std::vector<std::vector<typename R::Elem>> combo;    // expression in power basis
  auto pw = identity(ring, n);
  for (size_t k = 0;; ++k) {
    std::vector<typename R::Elem> v(pw.a.begin(), pw.a.end());
    std::vector<typename R::Elem> c(k + 1, ring.zero());
    c[k] = ring.one();
    for (size_t r = 0; r < echelon.size(); ++r) {
      size_t lc = lead_of[r];
      if (ring.is_zero(v[lc])) continue;
      auto f = v[lc];
      for (size_t j = 0; j < nn; ++j) v[j] = ring.sub(v[j], ring.mul(f, echelon[r][j]));
      for (size_t j = 0; j < combo[r].size() && j < c.size(); ++j)
        c[j] = ring.sub(c[j], ring.mul(f, combo[r][j]));
    }
    size_t lead = nn;
    for (size_t j = 0; j < nn; ++j) {
      if (!ring.is_zero(v[j])) {
        lead = j;
        break;
      }
    }
    if (lead == nn) return polyops::monic(ring, c);  // dependency found: minpoly
    auto li = ring.inv(v[lead]);
    for (auto& x : v) x = ring.mul(li, x);
    for (auto& x : c) x = ring.mul(li, x);
    echelon.push_back(std::move(v));
    combo.push_back(std::move(c));
    lead_of.push_back(lead);
    pw = mat_mul(ring, pw, M);
    require(k <= n, errc::bad_input, "minpoly did not terminate");
  }
}

// minimal polynomial of an element of a finite-dimensional algebra, given its
// coordinates under repeated multiplication (caller supplies x^(k+1) from x^k)
template <typename R, typename NextFn>
PolyOf<R> minpoly_by_powers(const R& ring, size_t dim, std::vector<typename R::Elem> first,
                            NextFn next_power, size_t max_deg) {
  std::vector<std::vector<typename R::Elem>> echelon;
  std::vector<size_t> lead_of;
  std::vector<std::vector<typename R::Elem>> combo;
  std::vector<typename R::Elem> cur = std::move(first);
  for (size_t k = 0;; ++k) {
    auto v = cur;
    std::vector<typename R::Elem> c(k + 1, ring.zero());
    c[k] = ring.one();
    for (size_t r = 0; r < echelon.size(); ++r) {
      size_t lc = lead_of[r];
      if (ring.is_zero(v[lc])) continue;
      auto f = v[lc];
      for (size_t j = 0; j < dim; ++j) v[j] = ring.sub(v[j], ring.mul(f, echelon[r][j]));
      for (size_t j = 0; j < combo[r].size() && j < c.size(); ++j)
        c[j] = ring.sub(c[j], ring.mul(f, combo[r][j]));
    }
    size_t lead = dim;
    for (size_t j = 0; j < dim; ++j) {
      if (!ring.is_zero(v[j])) {
        lead = j;
        break;
      }
    }
    if (lead == dim) return polyops::monic(ring, c);
    auto li = ring.inv(v[lead]);
    for (auto& x : v) x = ring.mul(li, x);
    for (auto& x : c) x = ring.mul(li, x);
    echelon.push_back(std::move(v));
    combo.push_back(std::move(c));
    lead_of.push_back(lead);
    cur = next_power(cur);
    require(k <= max_deg, errc::bad_input, "minpoly_by_powers did not terminate");
  }
}

// ---------------------------------------------------------------------------
// factorization over F_q: squarefree decomposition, distinct-degree, then
// seeded Cantor-Zassenhaus equal-degree splitting
// ---------------------------------------------------------------------------

using FqPoly = PolyOf<Fq>;

inline FqPoly fq_pth_root_poly(const Fq& F, const FqPoly& f) {
  // f = g(x^p); coefficients of g are p-th roots
  FqPoly g;
  for (size_t i = 0; i < f.size(); i += F.p) g.push_back(F.pth_root(f[i]));
  return g;
}

inline std::vector<std::pair<FqPoly, unsigned>> fq_squarefree(const Fq& F, FqPoly f) {
  std::vector<std::pair<FqPoly, unsigned>> out;
  polyops::trim(F, f);
  if (polyops::degree<Fq>(f) <= 0) return out;
  f = polyops::monic(F, std::move(f));
  auto fp = polyops::derivative(F, f);
  if (fp.empty()) {
    for (auto& [h, m] : fq_squarefree(F, fq_pth_root_poly(F, f)))
      out.emplace_back(h, m * static_cast<unsigned>(F.p));
    return out;
  }
  auto c = polyops::gcd(F, f, fp);
  auto w = polyops::divmod(F, f, c).first;
  unsigned i = 1;
  while (polyops::degree<Fq>(w) > 0) {
    auto y = polyops::gcd(F, w, c);
    auto fac = polyops::divmod(F, w, y).first;
    if (polyops::degree<Fq>(fac) > 0) out.emplace_back(polyops::monic(F, fac), i);
    w = std::move(y);
    c = polyops::divmod(F, c, w).first;
    ++i;
  }
  if (polyops::degree<Fq>(c) > 0) {
    for (auto& [h, m] : fq_squarefree(F, fq_pth_root_poly(F, c)))
      out.emplace_back(h, m * static_cast<unsigned>(F.p));
  }
  return out;
}

namespace detail {

inline FqPoly fq_random_poly(const Fq& F, Rng& rng, long deg) {
  FqPoly a(static_cast<size_t>(deg) + 1, F.zero());
  for (auto& c : a) c = F.random(rng);
  polyops::trim(F, a);
  if (a.empty()) a = {F.one()};
  return a;
}

// split a squarefree product of irreducibles all of degree d
inline void fq_equal_degree(const Fq& F, const FqPoly& g, long d, Rng& rng,
                            std::vector<FqPoly>& out) {
  long dg = polyops::degree<Fq>(g);
  if (dg == d) {
    out.push_back(polyops::monic(F, g));
    return;
  }
  for (int attempt = 0; attempt < 200; ++attempt) {
    auto a = fq_random_poly(F, rng, dg - 1);
    FqPoly b;
    if (F.p == 2) {
      // trace map over F_2: a + a^2 + ... + a^(2^(s*d - 1))
      b = polyops::mod(F, a, g);
      auto t = b;
      unsigned rounds = static_cast<unsigned>(F.s) * static_cast<unsigned>(d);
      for (unsigned i = 1; i < rounds; ++i) {
        t = polyops::mulmod(F, t, t, g);
        b = polyops::add(F, b, t);
      }
    } else {
      mpz_class e;
      mpz_ui_pow_ui(e.get_mpz_t(), F.q, static_cast<unsigned long>(d));
      e = (e - 1) / 2;
      b = polyops::powmod(F, a, e, g);
      b = polyops::sub(F, b, FqPoly{F.one()});
    }
    auto h = polyops::gcd(F, b, g);
    long dh = polyops::degree<Fq>(h);
    if (dh > 0 && dh < dg) {
      fq_equal_degree(F, h, d, rng, out);
      fq_equal_degree(F, polyops::divmod(F, g, h).first, d, rng, out);
      return;
    }
  }
  raise(errc::split_failure, "equal-degree splitting exhausted its retry budget");
}

}  // namespace detail

// monic irreducible factors with multiplicities, deterministically ordered
// (degree, then coefficient index tuple)
inline std::vector<std::pair<FqPoly, unsigned>> fq_factor(const Fq& F, const FqPoly& f,
                                                          uint64_t seed = 0x9b97f4a7c15ULL) {
  std::vector<std::pair<FqPoly, unsigned>> out;
  Rng rng(seed);
  for (auto& [sqf, mult] : fq_squarefree(F, f)) {
    // distinct-degree on the squarefree part
    FqPoly rem = sqf;
    FqPoly h{F.zero(), F.one()};  // x^(q^d) mod rem, updated per degree
    for (long d = 1; polyops::degree<Fq>(rem) >= 2 * d; ++d) {
      h = polyops::powmod(F, h, mpz_class(static_cast<unsigned long>(F.q)), rem);
      auto diff = polyops::sub(F, h, FqPoly{F.zero(), F.one()});
      auto g = polyops::gcd(F, diff, rem);
      if (polyops::degree<Fq>(g) > 0) {
        std::vector<FqPoly> irr;
        detail::fq_equal_degree(F, g, d, rng, irr);
        for (auto& pcs : irr) out.emplace_back(pcs, mult);
        rem = polyops::divmod(F, rem, g).first;
        h = polyops::mod(F, h, rem);
      }
    }
    if (polyops::degree<Fq>(rem) > 0) out.emplace_back(polyops::monic(F, rem), mult);
  }
  std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
    if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
    for (size_t i = x.first.size(); i-- > 0;)
      if (x.first[i] != y.first[i]) return F.to_index(x.first[i]) < F.to_index(y.first[i]);
    return false;
  });
  return out;
}

}  // namespace workbench
