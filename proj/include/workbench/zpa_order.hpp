#pragma once

#include <memory>
#include <vector>

#include "workbench/fdalgebra.hpp"
#include "workbench/group.hpp"
#include "workbench/repmodule.hpp"
#include "workbench/rings.hpp"

namespace workbench {

// the group ring (Z/p^a)[G], a finite proxy for the complete group ring: the
// place where idempotents are lifted and projective characters are read off
struct ZpaGroupRing {
  using Vec = std::vector<uint64_t>;

  Zpa ring;
  FiniteGroup g;

  ZpaGroupRing(unsigned long p, unsigned a, FiniteGroup grp) : ring(p, a), g(std::move(grp)) {}

  Vec zero_vec() const { return Vec(g.n, 0); }
  Vec one() const {
    Vec v = zero_vec();
    v[g.id] = ring.one();
    return v;
  }
  Vec add(const Vec& x, const Vec& y) const {
    Vec r = x;
    for (size_t i = 0; i < g.n; ++i) r[i] = ring.add(r[i], y[i]);
    return r;
  }
  Vec sub(const Vec& x, const Vec& y) const {
    Vec r = x;
    for (size_t i = 0; i < g.n; ++i) r[i] = ring.sub(r[i], y[i]);
    return r;
  }
  Vec scale_int(long c, const Vec& x) const {
    Vec r = x;
    auto ce = ring.from_int(c);
    for (auto& v : r) v = ring.mul(ce, v);
    return r;
  }
  Vec mul(const Vec& x, const Vec& y) const {
    Vec r = zero_vec();
    for (size_t i = 0; i < g.n; ++i) {
      if (x[i] == 0) continue;
      for (size_t j = 0; j < g.n; ++j) {
        if (y[j] == 0) continue;
        size_t k = g.mul(static_cast<uint16_t>(i), static_cast<uint16_t>(j));
        r[k] = ring.add(r[k], ring.mul(x[i], y[j]));
      }
    }
    return r;
  }
  bool eq(const Vec& x, const Vec& y) const { return x == y; }
  bool is_zero(const Vec& x) const {
    for (auto v : x)
      if (v) return false;
    return true;
  }

  // reduction to F_p[G] coordinates
  std::vector<Fq::Elem> reduce_mod_p(const Vec& x) const {
    std::vector<Fq::Elem> r(g.n);
    for (size_t i = 0; i < g.n; ++i) r[i] = x[i] % ring.p;
    return r;
  }
};

// orthogonal primitive idempotents of (Z/p^a)[G]: primitive idempotents of
// the semisimple quotient of F_p[G], refined by the Newton iteration
// e <- 3e^2 - 2e^3 with the spec'd budget of a iterations, lifted
// sequentially inside shrinking corners to keep exact orthogonality
struct LiftedIdempotents {
  std::vector<ZpaGroupRing::Vec> idem;  // sums to 1, pairwise orthogonal
  std::vector<std::vector<Fq::Elem>> mod_rad_images;
};

inline LiftedIdempotents lift_idempotents(const ZpaGroupRing& R, uint64_t seed = 31415) {
  const auto& G = R.g;
  Fq Fp(R.ring.p, 1);
  auto omega = std::make_shared<FDAlgebra<Fq>>(group_algebra(Fp, G));
  auto rad = radical(*omega);
  auto qa = quotient_algebra(*omega, rad.basis);
  auto prim = primitive_idempotents(qa.algebra, seed);
  require(!prim.empty(), errc::bad_input, "no idempotents in the semisimple quotient");

  // refine each lift inside Omega first (kills the radical error), then read
  // integer representatives and refine p-adically in (Z/p^a)[G]
  auto& A = *omega;
  auto mulA = [&](const std::vector<Fq::Elem>& x, const std::vector<Fq::Elem>& y) {
    return A.mul(x, y);
  };
  auto addA = [&](const std::vector<Fq::Elem>& x, const std::vector<Fq::Elem>& y) {
    return A.add(x, y);
  };
  auto scaleA = [&](long c, const std::vector<Fq::Elem>& x) {
    return A.scale(A.field.from_int(c), x);
  };
  auto eqA = [&](const std::vector<Fq::Elem>& x, const std::vector<Fq::Elem>& y) {
    return A.eq(x, y);
  };

  LiftedIdempotents out;
  ZpaGroupRing::Vec complement = R.one();
  std::vector<std::vector<Fq::Elem>> omega_idems;
  for (size_t i = 0; i < prim.size(); ++i) {
    if (i + 1 == prim.size()) {
      out.idem.push_back(complement);
      break;
    }
    // lift to Omega through the quotient section
    auto e_bar = prim[i];
    auto e_omega = mat_vec(Fp, qa.lift, e_bar);
    e_omega = newton_idempotent(e_omega, mulA, addA, scaleA, eqA,
                                static_cast<unsigned>(2 * G.n + 4));
    // integer representative, squeezed into the current corner
    ZpaGroupRing::Vec c(G.n);
    for (size_t k = 0; k < G.n; ++k) c[k] = e_omega[k];  // residues < p
    c = R.mul(R.mul(complement, c), complement);
    auto mulR = [&](const ZpaGroupRing::Vec& x, const ZpaGroupRing::Vec& y) { return R.mul(x, y); };
    auto addR = [&](const ZpaGroupRing::Vec& x, const ZpaGroupRing::Vec& y) { return R.add(x, y); };
    auto scaleR = [&](long cc, const ZpaGroupRing::Vec& x) { return R.scale_int(cc, x); };
    auto eqR = [&](const ZpaGroupRing::Vec& x, const ZpaGroupRing::Vec& y) { return R.eq(x, y); };
    auto e = newton_idempotent(c, mulR, addR, scaleR, eqR, R.ring.a);
    out.idem.push_back(e);
    complement = R.sub(complement, e);
  }

  // audit: orthogonality, sum, and semisimple-quotient images
  ZpaGroupRing::Vec total = R.zero_vec();
  for (const auto& e : out.idem) {
    require(R.eq(R.mul(e, e), e), errc::lift_diverged, "lifted element is not idempotent");
    total = R.add(total, e);
  }
  require(R.eq(total, R.one()), errc::lift_diverged, "lifted idempotents do not sum to 1");
  for (size_t i = 0; i < out.idem.size(); ++i)
    for (size_t j = 0; j < out.idem.size(); ++j) {
      if (i == j) continue;
      require(R.is_zero(R.mul(out.idem[i], out.idem[j])), errc::lift_diverged,
              "lifted idempotents are not orthogonal");
    }
  for (const auto& e : out.idem) {
    auto im = mat_vec(Fp, qa.project, R.reduce_mod_p(e));
    out.mod_rad_images.push_back(im);
    require(qa.algebra.eq(qa.algebra.mul(im, im), im), errc::lift_diverged,
            "mod-rad image is not idempotent");
  }
  return out;
}

// matrix idempotent over (Z/p^a)[G] realizing a projective module as the
// image of right multiplication on a free module
struct ZpaProjective {
  std::shared_ptr<const ZpaGroupRing> R;
  size_t rank = 0;                        // free module rank
  std::vector<ZpaGroupRing::Vec> E;       // rank x rank entries, row-major
  std::string provenance = "zpa-proxy";   // which construction produced it

  const ZpaGroupRing::Vec& at(size_t i, size_t j) const { return E[i * rank + j]; }
  void verify() const {
    // E^2 = E entrywise
    for (size_t i = 0; i < rank; ++i)
      for (size_t j = 0; j < rank; ++j) {
        auto acc = R->zero_vec();
        for (size_t k = 0; k < rank; ++k) acc = R->add(acc, R->mul(at(i, k), at(k, j)));
        require(R->eq(acc, at(i, j)), errc::bad_input, "projective witness is not idempotent");
      }
  }
};

// block-diagonal assembly from lifted idempotents (multiplicity vector over
// the primitive set)
inline ZpaProjective block_projective(std::shared_ptr<const ZpaGroupRing> R,
                                      const LiftedIdempotents& li,
                                      const std::vector<unsigned>& multiplicity) {
  require(multiplicity.size() == li.idem.size(), errc::bad_input, "multiplicity size mismatch");
  size_t rank = 0;
  for (unsigned m : multiplicity) rank += m;
  ZpaProjective P;
  P.R = R;
  P.rank = std::max<size_t>(rank, 1);
  P.E.assign(P.rank * P.rank, R->zero_vec());
  size_t pos = 0;
  for (size_t i = 0; i < multiplicity.size(); ++i)
    for (unsigned m = 0; m < multiplicity[i]; ++m) {
      P.E[pos * P.rank + pos] = li.idem[i];
      ++pos;
    }
  P.verify();
  return P;
}

// exact character of the p-adic lift of the projective: the trace of g acting
// on the image of E, recovered from the Z/p^a trace by a centered lift (the
// honest value is a rational integer bounded by rank * |G|)
inline std::vector<long> projective_character(const ZpaProjective& P) {
  const auto& R = *P.R;
  const auto& G = R.g;
  require(2 * P.rank * G.n < R.ring.pa, errc::precision_exhausted,
          "p-adic precision too low to recover character values");
  std::vector<long> chi(G.n, 0);
  for (uint16_t gg = 0; gg < G.n; ++gg) {
    uint64_t tr = 0;
    for (size_t m = 0; m < P.rank; ++m) {
      const auto& d = P.at(m, m);
      for (uint16_t h = 0; h < G.n; ++h) {
        uint16_t target = G.mul(G.mul(G.invert(h), G.invert(gg)), h);
        tr = R.ring.add(tr, d[target]);
      }
    }
    long v = static_cast<long>(tr);
    if (2 * tr > R.ring.pa) v -= static_cast<long>(R.ring.pa);
    chi[gg] = v;
  }
  return chi;
}

}  // namespace workbench
