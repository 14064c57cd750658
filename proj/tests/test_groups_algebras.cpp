#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "workbench/fdalgebra.hpp"
#include "workbench/group.hpp"
#include "workbench/zpa_order.hpp"

using namespace workbench;

TEST_CASE("group builders") {
  auto c3 = cyclic_group(3);
  CHECK(c3.n == 3);
  CHECK(c3.mul(1, 2) == 0);

  auto s3 = symmetric_group(3);
  CHECK(s3.n == 6);
  size_t involutions = 0;
  for (uint16_t x = 0; x < s3.n; ++x)
    if (x != s3.id && s3.mul(x, x) == s3.id) ++involutions;
  CHECK(involutions == 3);

  // semidirect C4 x| inversion is D4
  auto c4 = cyclic_group(4);
  auto d4_semi = semidirect_product(c4, inversion_automorphism(c4), 2);
  auto d4 = dihedral_group(4);
  CHECK(d4_semi.n == 8);
  // same multiset of element orders and conjugacy class sizes
  auto orders = [](const FiniteGroup& g) {
    std::vector<unsigned> o;
    for (uint16_t x = 0; x < g.n; ++x) o.push_back(g.order_of(x));
    std::sort(o.begin(), o.end());
    return o;
  };
  CHECK(orders(d4_semi) == orders(d4));
  CHECK(d4_semi.conjugacy_classes().size() == d4.conjugacy_classes().size());

  auto q8 = quaternion_group(8);
  CHECK(q8.n == 8);
  CHECK(orders(q8) == std::vector<unsigned>{1, 2, 4, 4, 4, 4, 4, 4});

  // A4 as (C2 x C2) x| C3
  auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
  // order-3 automorphism cycling the three involutions (indices 1, 2, 3)
  Automorphism rho{0, 2, 3, 1};
  REQUIRE(is_automorphism(v4, rho));
  auto a4_semi = semidirect_product(v4, rho, 3);
  auto a4 = alternating_group(4);
  CHECK(a4_semi.n == 12);
  CHECK(orders(a4_semi) == orders(a4));

  CHECK_THROWS_AS(semidirect_product(c4, Automorphism{1, 2, 3, 0}, 2), Error);
  CHECK_THROWS_AS(symmetric_group(5), Error);
}

TEST_CASE("group algebras") {
  Fq F2(2), F3(3);
  auto c2 = cyclic_group(2);
  auto a = group_algebra(F2, c2);
  CHECK(a.dim == 2);
  // g * g = 1
  auto g = a.basis_vec(1);
  CHECK(a.eq(a.mul(g, g), a.unity));

  auto s3 = symmetric_group(3);
  CHECK(group_algebra(F3, s3).dim == 6);

  Rationals Q;
  auto q8 = quaternion_group(8);
  auto qa = group_algebra(Q, q8);
  CHECK(center_subspace(qa).dimension() == 5);
}

TEST_CASE("crossed products") {
  // trivial cocycle coincides with the group algebra
  Fq F5(5);
  auto c3 = cyclic_group(3);
  std::vector<Fq::Elem> tau(9, F5.one());
  auto cp = crossed_product(F5, c3, tau);
  auto ga = group_algebra(F5, c3);
  CHECK(cp.sc == ga.sc);

  // F_4 with C2 acting by Frobenius: 2-dim over F_4, flattened to 4 over F_2;
  // center is F_2 + F_2 * (sum over the extension basis)
  Fq F4(2, 2);
  auto c2 = cyclic_group(2);
  std::vector<unsigned> frob{0, 1};
  std::vector<Fq::Elem> tau2(4, F4.one());
  auto cp2 = crossed_product_frobenius(F4, c2, frob, tau2);
  CHECK(cp2.dim == 4);
  // skew group ring of a Galois extension: the algebra is M_2(F_2), center F_2
  CHECK(center_subspace(cp2).dimension() == 1);
  CHECK(radical(cp2).basis.dimension() == 0);

  // truncated Laurent coefficients with u^2 = 1+T
  Trunc L(2, 1, 8, true);
  std::vector<TruncEl> tau3(4, L.one());
  auto t1 = L.add(L.one(), L.monomial(1));
  tau3[1 * 2 + 1] = t1;  // tau(u, u) = 1 + T
  auto cp3 = crossed_product(L, c2, tau3);
  auto u = cp3.basis_vec(1);
  auto u2 = cp3.mul(u, u);
  CHECK(L.eq(u2[0], t1));
  CHECK(L.is_zero(u2[1]));

  // a broken cocycle is rejected
  std::vector<Fq::Elem> bad(9, F5.one());
  bad[1 * 3 + 1] = F5.from_int(2);
  CHECK_THROWS_AS(crossed_product(F5, c3, bad), Error);
}

TEST_CASE("radical computations") {
  // F_p[C_p]: radical is the augmentation ideal, nilpotency index p
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    Fq F(p);
    auto cp = cyclic_group(static_cast<unsigned>(p));
    auto a = group_algebra(F, cp);
    auto rd = radical(a);
    CHECK(rd.basis.dimension() == p - 1);
    CHECK(rd.nilpotency == p);
  }

  // F_2[S3]: radical has dimension 1
  {
    Fq F2(2);
    auto a = group_algebra(F2, symmetric_group(3));
    auto rd = radical(a);
    CHECK(rd.basis.dimension() == 1);

    // oracle: the radical is the intersection of the annihilators of the two
    // known simple modules (trivial and the natural 2-dimensional one)
    auto s3 = symmetric_group(3);
    // 2-dim simple: S3 -> GL_2(F_2) via the standard permutation action on
    // {(x,y,z) : x+y+z=0} in coordinates (x, y)
    // generators: a transposition and a 3-cycle; build action for each group
    // element by brute force from the permutation representation
    std::vector<Matrix<Fq::Elem>> twodim(s3.n, Matrix<Fq::Elem>(2, 2, F2.zero()));
    // permutation matrices on F_2^3 restricted to the sum-zero plane with
    // basis e1-e3 -> (1,0), e2-e3 -> (0,1): recompute per element
    auto perms = [&]() {
      // reconstruct the permutation of each group element from its action on
      // the three points {0,1,2}: S3 was built from sorted permutations
      std::vector<std::vector<uint8_t>> ps;
      std::vector<uint8_t> base{0, 1, 2};
      std::sort(base.begin(), base.end());
      do {
        ps.push_back(base);
      } while (std::next_permutation(base.begin(), base.end()));
      return ps;
    }();
    for (size_t gi = 0; gi < s3.n; ++gi) {
      const auto& sigma = perms[gi];
      // basis vectors v0 = e0 - e2, v1 = e1 - e2; image of e_i is e_{sigma(i)}
      auto coord = [&](uint8_t image) {
        // express e_image - e_{sigma(2)} ... compute e_{sigma(i)} - e_{sigma(2)}
        return image;
      };
      (void)coord;
      // images of v0, v1 in terms of v0, v1 over F_2: e_a - e_b = v_a - v_b
      auto tov = [&](uint8_t a, uint8_t b) {
        std::pair<uint64_t, uint64_t> r{0, 0};
        auto add = [&](uint8_t e, uint64_t sign) {
          if (e == 0) r.first ^= sign;
          if (e == 1) r.second ^= sign;
          // e == 2 contributes -v0 - v1 = v0 + v1 over F_2
          if (e == 2) {
            r.first ^= sign;
            r.second ^= sign;
          }
        };
        add(a, 1);
        add(b, 1);
        return r;
      };
      auto [a00, a10] = tov(sigma[0], sigma[2]);
      auto [a01, a11] = tov(sigma[1], sigma[2]);
      twodim[gi].at(0, 0) = a00;
      twodim[gi].at(1, 0) = a10;
      twodim[gi].at(0, 1) = a01;
      twodim[gi].at(1, 1) = a11;
    }
    // annihilator of both simples: x = sum c_g g with sum c_g = 0 (trivial)
    // and sum c_g twodim[g] = 0
    Matrix<Fq::Elem> sys(5, s3.n, F2.zero());
    for (size_t gi = 0; gi < s3.n; ++gi) {
      sys.at(0, gi) = F2.one();
      sys.at(1, gi) = twodim[gi].at(0, 0);
      sys.at(2, gi) = twodim[gi].at(0, 1);
      sys.at(3, gi) = twodim[gi].at(1, 0);
      sys.at(4, gi) = twodim[gi].at(1, 1);
    }
    auto ann = kernel_basis(F2, sys);
    CHECK(ann.cols == 1);  // the oracle agrees: radical dimension 1
    // and the radical vector matches
    std::vector<Fq::Elem> v(s3.n);
    for (size_t i = 0; i < s3.n; ++i) v[i] = ann.at(i, 0);
    CHECK(rd.basis.contains(F2, v));
  }

  // Q[S3] is semisimple
  {
    Rationals Q;
    auto a = group_algebra(Q, symmetric_group(3));
    CHECK(radical(a).basis.dimension() == 0);
  }

  // Maschke: p does not divide |G|
  {
    Fq F5(5);
    auto a = group_algebra(F5, symmetric_group(3));
    CHECK(radical(a).basis.dimension() == 0);
  }

  // p-groups: radical is the augmentation ideal
  {
    Fq F2(2);
    auto q8 = quaternion_group(8);
    auto a = group_algebra(F2, q8);
    auto rd = radical(a);
    CHECK(rd.basis.dimension() == 7);
    auto d4a = group_algebra(F2, dihedral_group(4));
    CHECK(radical(d4a).basis.dimension() == 7);
  }

  // radical of the quotient by the radical is zero
  {
    Fq F3(3);
    auto a = group_algebra(F3, symmetric_group(3));
    auto rd = radical(a);
    CHECK(rd.basis.dimension() == 4);  // two 1-dim simples survive mod 3
    auto qa = quotient_algebra(a, rd.basis);
    CHECK(radical(qa.algebra).basis.dimension() == 0);
  }
}

TEST_CASE("idempotent lifting over Z/p^a") {
  // Z/2^8[C2] is local: only the trivial idempotent
  {
    ZpaGroupRing R(2, 8, cyclic_group(2));
    auto li = lift_idempotents(R);
    CHECK(li.idem.size() == 1);
    CHECK(li.idem[0] == R.one());
  }
  // Z/3^8[C2]: e = (1 +- g)/2
  {
    ZpaGroupRing R(3, 8, cyclic_group(2));
    auto li = lift_idempotents(R);
    REQUIRE(li.idem.size() == 2);
    auto half = R.ring.inv(2);
    bool found_plus = false, found_minus = false;
    for (const auto& e : li.idem) {
      if (e[0] == half && e[1] == half) found_plus = true;
      if (e[0] == half && e[1] == R.ring.neg(half)) found_minus = true;
    }
    CHECK(found_plus);
    CHECK(found_minus);
  }
  // Z/2^8[S3]: three orthogonal primitive idempotents
  {
    ZpaGroupRing R(2, 8, symmetric_group(3));
    auto li = lift_idempotents(R);
    CHECK(li.idem.size() == 3);
  }
}
