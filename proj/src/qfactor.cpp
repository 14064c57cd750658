#include "workbench/qfactor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>

namespace workbench {

namespace {

namespace po = polyops;

using QPoly = PolyOf<Rationals>;
using ZPoly = std::vector<mpz_class>;
using MPoly = PolyOf<Zmod>;

const Rationals kQ;

// exact division by a monic integer polynomial; nullopt if not exact
std::optional<ZPoly> z_exact_div(const ZPoly& f, const ZPoly& g) {
  ZPoly rem = f, q(f.size() >= g.size() ? f.size() - g.size() + 1 : 0, 0);
  while (rem.size() >= g.size()) {
    if (rem.back() == 0) {
      rem.pop_back();
      continue;
    }
    mpz_class c = rem.back();  // g monic
    size_t shift = rem.size() - g.size();
    q[shift] = c;
    for (size_t i = 0; i < g.size(); ++i) rem[shift + i] -= c * g[i];
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
  }
  if (!rem.empty()) return std::nullopt;
  return q;
}

// Yun's squarefree decomposition for monic rational polynomials
std::vector<std::pair<QPoly, unsigned>> yun_squarefree(QPoly f) {
  std::vector<std::pair<QPoly, unsigned>> out;
  auto fp = po::derivative(kQ, f);
  auto a = po::gcd(kQ, f, fp);
  auto b = po::divmod(kQ, f, a).first;
  auto c = po::divmod(kQ, fp, a).first;
  auto d = po::sub(kQ, c, po::derivative(kQ, b));
  unsigned i = 1;
  while (po::degree<Rationals>(b) > 0) {
    auto g = po::gcd(kQ, b, d);
    if (po::degree<Rationals>(g) > 0) out.emplace_back(g, i);
    b = po::divmod(kQ, b, g).first;
    c = po::divmod(kQ, d, g).first;
    d = po::sub(kQ, c, po::derivative(kQ, b));
    ++i;
  }
  return out;
}

struct HenselPair {
  MPoly g, h, s, t;  // f = g*h, s*g + t*h = 1, all mod m
};

// one quadratic step: lift a factorization mod m to mod min(m^2, m_top)
HenselPair hensel_step(const ZPoly& f, const HenselPair& in, const mpz_class& m,
                       const mpz_class& m_top) {
  mpz_class m2 = m * m;
  if (m2 > m_top) m2 = m_top;
  Zmod R(m2);
  auto lift = [&](const MPoly& p) {
    MPoly r;
    for (const auto& c : p) r.push_back(R.red(c));
    po::trim(R, r);
    return r;
  };
  MPoly g = lift(in.g), h = lift(in.h), s = lift(in.s), t = lift(in.t);
  MPoly fm;
  for (const auto& c : f) fm.push_back(R.red(c));
  po::trim(R, fm);

  auto e = po::sub(R, fm, po::mul(R, g, h));
  auto qr = po::divmod(R, po::mul(R, s, e), h);
  auto g1 = po::add(R, g, po::add(R, po::mul(R, t, e), po::mul(R, qr.first, g)));
  auto h1 = po::add(R, h, qr.second);

  auto b = po::sub(R, po::add(R, po::mul(R, s, g1), po::mul(R, t, h1)), MPoly{R.one()});
  auto qr2 = po::divmod(R, po::mul(R, s, b), h1);
  auto s1 = po::sub(R, s, qr2.second);
  auto t1 = po::sub(R, t, po::add(R, po::mul(R, b, t), po::mul(R, qr2.first, g1)));

  require(po::sub(R, fm, po::mul(R, g1, h1)).empty(), errc::bad_input, "hensel step lost f = g*h");
  require(po::sub(R, po::add(R, po::mul(R, s1, g1), po::mul(R, t1, h1)), MPoly{R.one()}).empty(),
          errc::bad_input, "hensel step lost the Bezout identity");
  return {g1, h1, s1, t1};
}

// lift the modular factor list of monic f from mod l to mod m_top by a
// divide-and-conquer tree of pairwise lifts
void hensel_tree(const ZPoly& f, const Fq& Fl, const std::vector<FqPoly>& facs, size_t lo,
                 size_t hi, const mpz_class& m_top, std::vector<ZPoly>& out) {
  if (hi - lo == 1) {
    out.push_back(f);
    return;
  }
  size_t mid = lo + (hi - lo) / 2;
  FqPoly G{Fl.one()}, H{Fl.one()};
  for (size_t i = lo; i < mid; ++i) G = po::mul(Fl, G, facs[i]);
  for (size_t i = mid; i < hi; ++i) H = po::mul(Fl, H, facs[i]);
  // Bezout over F_l
  FqPoly r0 = G, r1 = H, s0{Fl.one()}, s1{}, t0{}, t1{Fl.one()};
  while (!r1.empty()) {
    auto qr = po::divmod(Fl, r0, r1);
    auto ns = po::sub(Fl, s0, po::mul(Fl, qr.first, s1));
    auto nt = po::sub(Fl, t0, po::mul(Fl, qr.first, t1));
    r0 = std::move(r1);
    r1 = std::move(qr.second);
    s0 = std::move(s1);
    s1 = std::move(ns);
    t0 = std::move(t1);
    t1 = std::move(nt);
  }
  require(po::degree<Fq>(r0) == 0, errc::bad_input, "modular factors not coprime");
  auto c_inv = Fl.inv(r0[0]);
  s0 = po::scale(Fl, c_inv, s0);
  t0 = po::scale(Fl, c_inv, t0);

  auto to_m = [&](const FqPoly& p) {
    MPoly r;
    for (auto c : p) r.push_back(mpz_class(static_cast<unsigned long>(c)));
    return r;
  };
  HenselPair hp{to_m(G), to_m(H), to_m(s0), to_m(t0)};
  mpz_class m(static_cast<unsigned long>(Fl.p));
  while (m < m_top) {
    hp = hensel_step(f, hp, m, m_top);
    m = m * m;
    if (m > m_top) m = m_top;
  }
  ZPoly Gz, Hz;
  for (const auto& c : hp.g) Gz.push_back(c);
  for (const auto& c : hp.h) Hz.push_back(c);
  hensel_tree(Gz, Fl, facs, lo, mid, m_top, out);
  hensel_tree(Hz, Fl, facs, mid, hi, m_top, out);
}

// factor a monic squarefree integer polynomial into monic irreducibles
std::vector<ZPoly> factor_monic_squarefree_z(const ZPoly& f0) {
  std::vector<ZPoly> out;
  ZPoly f = f0;
  size_t n = f.size() - 1;
  if (n == 0) return out;
  if (n == 1) {
    out.push_back(f);
    return out;
  }

  // good prime: f stays squarefree mod l
  unsigned long l = 0;
  for (unsigned long cand = 3; cand < 256; cand += 2) {
    if (!is_prime_u64(cand)) continue;
    Fq Fl_try(cand, 1);
    FqPoly fm_try;
    for (const auto& c : f) fm_try.push_back(mpz_fdiv_ui(c.get_mpz_t(), cand));
    auto g = po::gcd(Fl_try, fm_try, po::derivative(Fl_try, fm_try));
    if (po::degree<Fq>(g) == 0) {
      l = cand;
      break;
    }
  }
  require(l != 0, errc::bad_input, "no good prime below 256 for this polynomial");
  Fq Fl(l, 1);
  FqPoly fm;
  for (const auto& c : f) fm.push_back(mpz_fdiv_ui(c.get_mpz_t(), l));

  auto modular = fq_factor(Fl, fm);
  std::vector<FqPoly> facs;
  for (auto& gm : modular) {
    require(gm.second == 1, errc::bad_input, "modular factorization not squarefree");
    facs.push_back(gm.first);
  }
  if (facs.size() == 1) {
    out.push_back(f);
    return out;
  }

  // Landau-Mignotte bound for coefficients of monic factors of f
  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_class bound = 1;
  mpz_sqrt(bound.get_mpz_t(), norm2.get_mpz_t());
  bound += 1;
  mpz_class two_n;
  mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n + 1));
  bound *= two_n;
  mpz_class m_top(static_cast<unsigned long>(l));
  while (m_top <= 2 * bound) m_top *= static_cast<unsigned long>(l);

  std::vector<ZPoly> lifted;
  hensel_tree(f, Fl, facs, 0, facs.size(), m_top, lifted);
  require(lifted.size() == facs.size(), errc::bad_input, "hensel tree factor count mismatch");

  // subset recombination by increasing cardinality
  Zmod R(m_top);
  std::vector<size_t> live(lifted.size());
  std::iota(live.begin(), live.end(), size_t{0});
  ZPoly rem_f = f;

  auto try_card = [&](size_t card) -> bool {
    std::vector<size_t> idx(card);
    std::function<bool(size_t, size_t)> rec = [&](size_t pos, size_t start) -> bool {
      if (pos == card) {
        MPoly prod{R.one()};
        for (size_t k : idx) {
          MPoly g;
          for (const auto& c : lifted[live[k]]) g.push_back(R.red(c));
          prod = po::mul(R, prod, g);
        }
        ZPoly cand;
        for (const auto& c : prod) cand.push_back(R.centered(c));
        auto quot = z_exact_div(rem_f, cand);
        if (!quot) return false;
        out.push_back(cand);
        rem_f = *quot;
        std::vector<size_t> nl;
        for (size_t k = 0; k < live.size(); ++k)
          if (std::find(idx.begin(), idx.end(), k) == idx.end()) nl.push_back(live[k]);
        live = std::move(nl);
        return true;
      }
      for (size_t k = start; k < live.size(); ++k) {
        idx[pos] = k;
        if (rec(pos + 1, k + 1)) return true;
      }
      return false;
    };
    return rec(0, 0);
  };

  size_t card = 1;
  while (!live.empty() && card <= live.size()) {
    if (2 * card > live.size()) break;  // the rest is one irreducible block
    if (try_card(card))
      card = 1;  // factor removed; restart at singletons
    else
      ++card;
  }
  if (rem_f.size() > 1) out.push_back(rem_f);
  return out;
}

}  // namespace

std::vector<std::pair<QPoly, unsigned>> q_factor(const QPoly& f0) {
  QPoly f = f0;
  po::trim(kQ, f);
  require(po::degree<Rationals>(f) >= 1, errc::bad_input, "factoring a constant");
  f = po::monic(kQ, std::move(f));

  std::vector<std::pair<QPoly, unsigned>> out;
  for (auto& sq : yun_squarefree(f)) {
    const QPoly& sqf = sq.first;
    unsigned mult = sq.second;
    // clear denominators: c = lcm of denominators, F(x) = c^n sqf(x/c) in Z[x], monic
    mpz_class c = 1;
    for (const auto& co : sqf) mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), co.get_den().get_mpz_t());
    size_t n = sqf.size() - 1;
    ZPoly F(n + 1);
    mpz_class cp = 1;  // c^(n-i)
    for (size_t i = n + 1; i-- > 0;) {
      mpq_class scaled = sqf[i] * mpq_class(cp);
      require(scaled.get_den() == 1, errc::bad_input, "denominator clearing failed");
      F[i] = scaled.get_num();
      cp *= c;
    }
    for (auto& g : factor_monic_squarefree_z(F)) {
      // substitute back: g(x) -> monic rational factor proportional to g(c x)
      size_t d = g.size() - 1;
      QPoly gq(d + 1);
      mpz_class ci = 1;  // c^i
      for (size_t i = 0; i <= d; ++i) {
        gq[i] = mpq_class(g[i] * ci);
        ci *= c;
      }
      gq = po::monic(kQ, std::move(gq));
      out.emplace_back(gq, mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
    for (size_t i = x.first.size(); i-- > 0;)
      if (x.first[i] != y.first[i]) return x.first[i] < y.first[i];
    return false;
  });
  return out;
}

bool q_is_irreducible(const QPoly& f) {
  auto facs = q_factor(f);
  return facs.size() == 1 && facs[0].second == 1;
}

}  // namespace workbench
