#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "workbench/iwasawa.hpp"

using namespace workbench;

namespace {

OneDimGroupSpec spec_c4_inv(unsigned a = 8, long m = 32) {
  auto c4 = cyclic_group(4);
  return make_spec(2, c4, inversion_automorphism(c4), a, m, "C4:inv");
}

OneDimGroupSpec spec_c3_inv(unsigned a = 8, long m = 32) {
  auto c3 = cyclic_group(3);
  return make_spec(2, c3, inversion_automorphism(c3), a, m, "C3:inv");
}

OneDimGroupSpec spec_trivial(unsigned long p, unsigned a = 8, long m = 32) {
  auto h = cyclic_group(1);
  return make_spec(p, h, identity_auto(1), a, m, "H1");
}

OneDimGroupSpec spec_c2(unsigned long p, unsigned a = 8, long m = 32) {
  auto c2 = cyclic_group(2);
  return make_spec(p, c2, identity_auto(2), a, m, "C2");
}

OneDimGroupSpec spec_q8(unsigned a = 8, long m = 16) {
  auto q8 = quaternion_group(8);
  // the order-2 automorphism swapping the two standard generators
  Automorphism phi(8);
  for (uint16_t x = 0; x < 8; ++x) {
    unsigned i = x % 4, j = x / 4;  // x = a^i b^j
    uint16_t img = q8.mul(q8.power(4, i), q8.power(1, j));
    phi[x] = img;
  }
  return make_spec(2, q8, phi, a, m, "Q8:swap");
}

}  // namespace

TEST_CASE("spec construction computes minimal n") {
  CHECK(spec_trivial(2).n == 0);
  CHECK(spec_c2(2).n == 0);
  CHECK(spec_c4_inv().n == 1);
  CHECK(spec_c3_inv().n == 1);
  CHECK(spec_q8().n == 1);
  // an automorphism of order 3 at p = 2 is rejected
  auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
  Automorphism rho{0, 2, 3, 1};
  CHECK_THROWS_AS(make_spec(2, v4, rho), Error);
}

TEST_CASE("multiplication relations") {
  auto spec = spec_c4_inv();
  IwasawaAlgebra A(spec);
  // gamma * h = phi(h) * gamma for every h
  for (uint16_t h = 0; h < 4; ++h) {
    auto lhs = A.mul(A.gamma(), A.group_elem(h));
    auto rhs = A.mul(A.group_elem(spec.phi[h]), A.gamma());
    CHECK(A.eq(lhs, rhs));
  }
  // gamma^(p^n - 1) * gamma = (1 + T) at the identity slot
  {
    auto g = A.gamma();
    auto acc = A.one();
    for (size_t i = 0; i < spec.pn(); ++i) acc = A.mul(acc, g);
    auto expected = A.zero();
    expected[A.idx(spec.H.id, 0)] = A.coeff.add(A.coeff.one(), A.coeff.monomial(1));
    CHECK(A.eq(acc, expected));
  }
  // associativity on random triples (H = C2, p = 3 and the C4 spec)
  {
    auto s2 = spec_c2(3);
    IwasawaAlgebra B(s2);
    Rng rng(2024);
    for (int t = 0; t < 100; ++t) {
      auto x = B.random(rng), y = B.random(rng), z = B.random(rng);
      CHECK(B.eq(B.mul(B.mul(x, y), z), B.mul(x, B.mul(y, z))));
    }
    Rng rng2(2025);
    for (int t = 0; t < 50; ++t) {
      auto x = A.random(rng2), y = A.random(rng2), z = A.random(rng2);
      CHECK(A.eq(A.mul(A.mul(x, y), z), A.mul(x, A.mul(y, z))));
    }
  }
}

TEST_CASE("sharp involution") {
  auto spec = spec_c4_inv();
  IwasawaAlgebra A(spec);
  // sharp(h) = h^{-1}
  for (uint16_t h = 0; h < 4; ++h)
    CHECK(A.eq(A.sharp(A.group_elem(h)), A.group_elem(spec.H.invert(h))));
  // sharp(gamma) * gamma = 1 at truncation
  CHECK(A.eq(A.mul(A.sharp(A.gamma()), A.gamma()), A.one()));
  // involution and anti-homomorphism on random elements
  Rng rng(31);
  for (int t = 0; t < 40; ++t) {
    auto x = A.random(rng), y = A.random(rng);
    CHECK(A.eq(A.sharp(A.sharp(x)), x));
    CHECK(A.eq(A.sharp(A.mul(x, y)), A.mul(A.sharp(y), A.sharp(x))));
  }
}

TEST_CASE("augmentation") {
  auto spec = spec_c4_inv();
  IwasawaAlgebra A(spec);
  for (uint16_t h = 1; h < 4; ++h)
    CHECK(A.augmentation(A.sub(A.group_elem(h), A.one())) == 0);
  CHECK(A.augmentation(A.gamma()) == 1);
  {
    auto x = A.zero();
    x[A.idx(spec.H.id, 0)] = A.coeff.add(A.coeff.one(), A.coeff.monomial(1));
    CHECK(A.augmentation(x) == 1);  // T evaluates to 0
  }
  // ring homomorphism on random pairs
  Rng rng(77);
  Zpa Z(spec.p, spec.a);
  for (int t = 0; t < 50; ++t) {
    auto x = A.random(rng), y = A.random(rng);
    CHECK(A.augmentation(A.mul(x, y)) == Z.mul(A.augmentation(x), A.augmentation(y)));
    CHECK(A.augmentation(A.add(x, y)) == Z.add(A.augmentation(x), A.augmentation(y)));
  }
}

TEST_CASE("residue algebras") {
  // (T): Q[C2], semisimple with two blocks
  {
    auto res = residue_algebra_T(spec_c2(3));
    CHECK(res.algebra->dim == 2);
    CHECK(res.radical_dim == 0);
    CHECK(res.simple_count == 2);
  }
  // (p), trivial H at p = 2, n = 1: u^2 = 1 + T
  {
    auto spec = spec_trivial(2);
    CHECK(spec.n == 0);  // trivial H: phi = id, gamma acts trivially
    // force n = 1 by using C2 quotient? the u^2 = 1+T instance needs n >= 1:
    // take H = C1 with the trivial map but a C2 Frobenius layer is not
    // available, so exercise it through the C4 spec below instead
  }
  {
    auto res = residue_algebra_P(spec_c4_inv());
    CHECK(res.algebra->dim == 8);  // |H| p^n
    // u_gamma^2 = (1+T) u_{gamma^2}: with the semidirect indexing, gamma has
    // index (id, 1) = 1 and gamma^2 wraps to (id, 0) carrying 1+T
    auto ug = res.algebra->basis_vec(1);
    auto sq = res.algebra->mul(ug, ug);
    auto expect = res.algebra->zero_vec();
    expect[0] = res.base.add(res.base.one(), res.base.monomial(1));
    CHECK(res.algebra->eq(sq, expect));
  }
  {
    auto res = residue_algebra_P(spec_c2(2));
    CHECK(res.algebra->dim == 2);
  }
}

TEST_CASE("radical certificates at (p)") {
  // trivial H: Delta(H) = 0, quotient is the whole (field) algebra
  {
    auto cert = propp_radical_certificate(spec_trivial(2));
    CHECK(cert.ideal_dim == 0);
    CHECK(cert.nilpotency == 1);
    CHECK(cert.quotient_dim == 1);
    CHECK(cert.pass);
  }
  // H = C2, p = 2, n = 0: (h-1)^2 = 0, quotient dim 1
  {
    auto cert = propp_radical_certificate(spec_c2(2));
    CHECK(cert.ideal_dim == 1);
    CHECK(cert.nilpotency == 2);
    CHECK(cert.quotient_dim == 1);
    CHECK(cert.pass);
  }
  // H = C4 x| inversion, p = 2, n = 1: nilpotency 4, quotient dim 2, x^2 = 1+T
  {
    auto cert = propp_radical_certificate(spec_c4_inv());
    CHECK(cert.ideal_dim == 6);
    CHECK(cert.nilpotency == 4);
    CHECK(cert.quotient_dim == 2);
    CHECK(cert.generator_relation);
    CHECK(cert.not_pth_power);
    CHECK(cert.pass);
  }
  // non-p-groups are rejected
  CHECK_THROWS_AS(propp_radical_certificate(spec_c3_inv()), Error);
}

TEST_CASE("cartan data at (p)") {
  CHECK(propp_cartan_data(spec_trivial(2)).cartan_entry == 1);
  {
    auto d = propp_cartan_data(spec_c2(2));
    CHECK(d.cartan_entry == 2);
    CHECK(d.filtration_entry == 2);
    CHECK(d.pass);
  }
  {
    auto d = propp_cartan_data(spec_c4_inv());
    CHECK(d.cartan_entry == 4);
    CHECK(d.filtration_entry == 4);
    CHECK(d.cokernel_index == 4);
    CHECK(d.injective);
    CHECK(d.pass);
  }
  {
    auto d = propp_cartan_data(spec_q8());
    CHECK(d.cartan_entry == 8);
    CHECK(d.pass);
  }
}

TEST_CASE("augmentation ideal generator") {
  // H trivial: w = 1 - gamma generates; gamma - 1 recovered
  {
    auto rep = aug_ideal_generator_check(spec_trivial(2));
    CHECK(rep.augmentation_zero);
    CHECK(rep.pass);
  }
  // H = C2 at p = 3
  {
    auto rep = aug_ideal_generator_check(spec_c2(3));
    CHECK(rep.targets_checked == 2);
    CHECK(rep.pass);
  }
  // H = C3 with inversion at p = 2
  {
    auto rep = aug_ideal_generator_check(spec_c3_inv());
    CHECK(rep.targets_checked == 3);
    CHECK(rep.pass);
  }
  // p dividing |H| is rejected
  CHECK_THROWS_AS(aug_ideal_generator_check(spec_c2(2)), Error);
}
