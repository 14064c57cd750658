#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "workbench/rings.hpp"
#include "workbench/rng.hpp"

using namespace workbench;

namespace {

// Independent rational arithmetic on integer pairs, normalized with plain
// gcd; no use of GMP's mpq layer.  Reference oracle for PLocal/Rationals.
struct RatPair {
  mpz_class num, den;
};

RatPair rp_norm(mpz_class n, mpz_class d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (g != 0) {
    n /= g;
    d /= g;
  }
  if (d == 0) d = 1;
  return {n, d};
}
RatPair rp_add(const RatPair& a, const RatPair& b) {
  return rp_norm(a.num * b.den + b.num * a.den, a.den * b.den);
}
RatPair rp_sub(const RatPair& a, const RatPair& b) {
  return rp_norm(a.num * b.den - b.num * a.den, a.den * b.den);
}
RatPair rp_mul(const RatPair& a, const RatPair& b) { return rp_norm(a.num * b.num, a.den * b.den); }
RatPair rp_div(const RatPair& a, const RatPair& b) { return rp_norm(a.num * b.den, a.den * b.num); }
bool rp_eq(const RatPair& a, const mpq_class& q) {
  return a.num == q.get_num() && a.den == q.get_den();
}

}  // namespace

TEST_CASE("p-local rational arithmetic") {
  PLocal R(5);
  auto x = R.make(7, 3), y = R.make(1, 2);
  CHECK(R.to_string(R.add(x, y)) == "17/6");
  CHECK(R.val(R.make(3, 4)) == 0);          // p = 5
  CHECK(PLocal(2).val(PLocal(2).make(3, 4)) == -2);
  CHECK(R.val(R.zero()) == kValInf);
  CHECK(R.val(R.make(1, 5)) == -1);      // lies in K, outside R
  CHECK_FALSE(R.in_ring(R.make(1, 5)));
  CHECK_THROWS_AS(R.inv(R.from_int(5)), Error);
  CHECK(R.eq(R.inv(R.from_int(2)), R.make(1, 2)));
}

TEST_CASE("p-local agrees with gcd-normalized pair arithmetic on 1000 random pairs") {
  PLocal R(3);
  Rng rng(20260809);
  for (int t = 0; t < 1000; ++t) {
    auto a = R.random(rng), b = R.random(rng);
    RatPair pa = rp_norm(a.get_num(), a.get_den()), pb = rp_norm(b.get_num(), b.get_den());
    CHECK(rp_eq(rp_add(pa, pb), R.add(a, b)));
    CHECK(rp_eq(rp_sub(pa, pb), R.sub(a, b)));
    CHECK(rp_eq(rp_mul(pa, pb), R.mul(a, b)));
    if (!R.is_zero(b) && R.is_unit(b)) CHECK(rp_eq(rp_div(pa, pb), R.div(a, b)));
  }
}

TEST_CASE("valuation is additive on products") {
  Rng rng(7);
  PLocal R2(2);
  for (int t = 0; t < 200; ++t) {
    auto a = R2.random(rng), b = R2.random(rng);
    if (R2.is_zero(a) || R2.is_zero(b)) continue;
    CHECK(R2.val(R2.mul(a, b)) == R2.val(a) + R2.val(b));
  }
  Trunc T(3, 1, 16);
  for (int t = 0; t < 200; ++t) {
    auto a = T.random(rng), b = T.random(rng);
    if (T.is_zero(a) || T.is_zero(b)) continue;
    auto prod = T.mul(a, b);
    if (T.is_zero(prod)) {
      CHECK(T.val(a) + T.val(b) >= T.m);  // truncated away
    } else {
      CHECK(T.val(prod) == T.val(a) + T.val(b));
    }
  }
}

TEST_CASE("reduction mod the maximal ideal") {
  PLocal R5(5);
  CHECK(R5.reduce_mod_p(R5.make(7, 3)) == 4);
  CHECK(PLocal(3).reduce_mod_p(mpq_class(6)) == 0);
  CHECK(PLocal(2).reduce_mod_p(PLocal(2).make(1, 3)) == 1);
  CHECK_THROWS_AS(PLocal(2).reduce_mod_p(PLocal(2).make(3, 4)), Error);

  // ring homomorphism on random pairs
  Rng rng(99);
  PLocal R(7);
  for (int t = 0; t < 300; ++t) {
    auto a = R.random(rng), b = R.random(rng);
    if (R.val(a) < 0 || R.val(b) < 0) continue;
    CHECK(R.reduce_mod_p(R.add(a, b)) == (R.reduce_mod_p(a) + R.reduce_mod_p(b)) % 7);
    CHECK(R.reduce_mod_p(R.mul(a, b)) == (R.reduce_mod_p(a) * R.reduce_mod_p(b)) % 7);
  }
}

TEST_CASE("finite fields") {
  Fq F4(2, 2);
  CHECK(F4.q == 4);
  // modulus is the first irreducible in the deterministic order: x^2 + x + 1
  CHECK(F4.modulus == fppoly::Poly{1, 1, 1});
  auto w = F4.gen();
  CHECK(F4.eq(F4.mul(w, w), F4.add(w, F4.one())));  // w^2 = w + 1
  for (uint64_t k = 1; k < 4; ++k) {
    auto x = F4.from_index(k);
    CHECK(F4.eq(F4.mul(x, F4.inv(x)), F4.one()));
  }

  Fq F16(2, 4), F9(3, 2), F125(5, 3);
  for (auto* F : {&F16, &F9, &F125}) {
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
      auto a = F->random(rng), b = F->random(rng), c = F->random(rng);
      CHECK(F->eq(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c))));
      CHECK(F->eq(F->mul(F->mul(a, b), c), F->mul(a, F->mul(b, c))));
      if (!F->is_zero(a)) CHECK(F->eq(F->mul(a, F->inv(a)), F->one()));
      // Frobenius is additive; pth_root inverts it
      CHECK(F->eq(F->frobenius(F->add(a, b)), F->add(F->frobenius(a), F->frobenius(b))));
      CHECK(F->eq(F->pth_root(F->frobenius(a)), a));
    }
  }

  // field construction is deterministic
  Fq F16b(2, 4);
  CHECK(F16.modulus == F16b.modulus);
}

TEST_CASE("Z/p^a arithmetic and valuations") {
  Zpa Z(3, 8);
  CHECK(Z.pa == 6561);
  CHECK(Z.val(Z.from_int(9)) == 2);
  CHECK(Z.val(0) == 8);
  CHECK(Z.is_unit(Z.from_int(2)));
  CHECK(Z.mul(Z.from_int(2), Z.inv(Z.from_int(2))) == Z.one());
  CHECK_THROWS_AS(Z.inv(Z.from_int(3)), Error);
  CHECK(Z.div_exact(Z.from_int(18), Z.from_int(6)) == Z.from_int(3));
}

TEST_CASE("truncated series arithmetic") {
  Trunc F2(2, 1, 4);
  auto one_plus_t = F2.add(F2.one(), F2.monomial(1));
  auto sq = F2.mul(one_plus_t, one_plus_t);
  CHECK(F2.eq(sq, F2.add(F2.one(), F2.monomial(2))));  // (1+T)^2 = 1+T^2 in char 2

  Trunc F3(3, 1, 4);
  auto u = F3.add(F3.one(), F3.monomial(1));
  auto ui = F3.inv(u);
  // 1 + 2T + T^2 + 2T^3
  auto expect = F3.add(F3.add(F3.one(), F3.monomial(1, 2)), F3.add(F3.monomial(2), F3.monomial(3, 2)));
  CHECK(F3.eq(ui, expect));
  CHECK(F3.eq(F3.mul(u, ui), F3.one()));

  CHECK(F3.val(F3.add(F3.monomial(2), F3.monomial(3))) == 2);

  // units invert back at working precision in every mode
  Rng rng(5);
  Trunc Z28T(2, 8, 12);
  for (int t = 0; t < 100; ++t) {
    auto a = Z28T.random(rng);
    if (!Z28T.is_unit(a)) continue;
    CHECK(Z28T.eq(Z28T.mul(a, Z28T.inv(a)), Z28T.one()));
  }

  // Laurent mode: negative valuations, floor enforcement
  Trunc L(3, 1, 8, true);
  auto tinv = L.inv(L.monomial(1));
  CHECK(L.val(tinv) == -1);
  CHECK(L.eq(L.mul(tinv, L.monomial(1)), L.one()));
  auto deep = L.monomial(7);
  CHECK_THROWS_AS(L.inv(L.mul(L.monomial(-7), L.monomial(-2))), Error);  // underflow
  (void)deep;
}

TEST_CASE("p-th power certificate") {
  Trunc F2(2, 1, 8);
  auto x = F2.add(F2.one(), F2.monomial(2));
  CHECK(is_pth_power(F2, x));
  CHECK_FALSE(is_pth_power(F2, F2.add(F2.one(), F2.monomial(1))));

  Trunc F3(3, 1, 12);
  auto y = F3.add(F3.add(F3.one(), F3.monomial(3)), F3.monomial(6));
  CHECK(is_pth_power(F3, y));

  // brute-force cube search over F_3 polynomials of degree <= 2 finds a
  // witness for the certified value
  bool witness = false;
  for (uint64_t c0 = 0; c0 < 3 && !witness; ++c0)
    for (uint64_t c1 = 0; c1 < 3 && !witness; ++c1)
      for (uint64_t c2 = 0; c2 < 3 && !witness; ++c2) {
        std::vector<uint64_t> co{c0, c1, c2};
        auto g = F3.canon(0, co);
        auto cube = F3.mul(F3.mul(g, g), g);
        if (F3.eq(cube, y)) witness = true;
      }
  CHECK(witness);

  Trunc tiny(2, 1, 1);
  CHECK_THROWS_AS(is_pth_power(tiny, tiny.one()), Error);
}
