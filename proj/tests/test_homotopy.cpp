#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "workbench/homotopy.hpp"
#include "workbench/iwasawa.hpp"
#include "workbench/modcatalog.hpp"

using namespace workbench;

namespace {

HomotopyCtx<Fq> group_ctx(const ModCatalog& cat) {
  return group_homotopy_ctx<Fq>(cat.omega, cat.g, cat.pims);
}

// presentation of the trivial module over F_p[C_p]: A = (g - 1)
Presentation<Fq> trivial_over_fpcp(const HomotopyCtx<Fq>& ctx, unsigned long p) {
  Presentation<Fq> P;
  P.L = ctx.L;
  P.rows = 1;
  P.cols = 1;
  auto gm1 = ctx.L->zero_vec();
  gm1[1] = ctx.L->field.one();
  gm1[0] = ctx.L->field.neg(ctx.L->field.one());
  P.A = {gm1};
  (void)p;
  return P;
}

// random element with integral coefficients (Laurent entries keep v >= 0 so
// the absolute truncation window does not erode top-end precision)
template <typename F>
typename F::Elem integral_random(const F& f, Rng& rng) {
  return f.random(rng);
}
TruncEl integral_random(const Trunc& f, Rng& rng) {
  std::vector<uint64_t> c;
  size_t len = 1 + rng.below(3);
  for (size_t i = 0; i < len; ++i) c.push_back(rng.below(f.base.pa));
  return f.canon(static_cast<long>(rng.below(3)), std::move(c));
}

template <typename F>
Presentation<F> random_presentation(const HomotopyCtx<F>& ctx, Rng& rng) {
  Presentation<F> P;
  P.L = ctx.L;
  P.rows = 1 + rng.below(2);
  P.cols = P.rows + 1 + rng.below(2);
  P.A.assign(P.rows * P.cols, ctx.L->zero_vec());
  for (auto& entry : P.A) {
    size_t terms = rng.below(3);
    for (size_t t = 0; t < terms; ++t)
      entry[rng.below(ctx.L->dim)] = integral_random(ctx.field(), rng);
  }
  return P;
}

}  // namespace

TEST_CASE("duals and transposes: closed forms") {
  auto cat = build_mod_catalog(cyclic_group(3), 3);
  auto ctx = group_ctx(cat);

  // free rank 1, presented with no relations
  Presentation<Fq> freeP;
  freeP.L = ctx.L;
  freeP.rows = 0;
  freeP.cols = 1;
  freeP.A = {};
  CHECK(coker_module(ctx, freeP).first.dim == 3);
  CHECK(dual_module(ctx, freeP).dim == 3);   // Lambda^+ = Lambda
  CHECK(transpose_module(ctx, freeP).dim == 0);  // D(free) = 0

  // trivial module over F_3[C3]: M^+ = socle (dim 1), DM has dim 1
  auto triv = trivial_over_fpcp(ctx, 3);
  auto M = coker_module(ctx, triv).first;
  CHECK(M.dim == 1);
  auto Mplus = dual_module(ctx, triv);
  CHECK(Mplus.dim == 1);
  auto DM = transpose_module(ctx, triv);
  CHECK(DM.dim == 1);
  // DM is the trivial module again: the action of g is the identity
  CHECK(DM.act[1] == identity(ctx.field(), 1));

  // invertible A presents the zero module
  Presentation<Fq> inv;
  inv.L = ctx.L;
  inv.rows = 1;
  inv.cols = 1;
  inv.A = {ctx.L->unity};
  CHECK(coker_module(ctx, inv).first.dim == 0);
  CHECK(dual_module(ctx, inv).dim == 0);
  CHECK(transpose_module(ctx, inv).dim == 0);

  // the dagger presentation realizes DM as a row module
  auto dag = dagger_presentation(ctx, triv);
  CHECK(coker_module(flip(ctx), dag).first.dim == DM.dim);
}

TEST_CASE("ext groups against the periodic-resolution oracle") {
  for (unsigned long p : {2ul, 3ul}) {
    auto cat = build_mod_catalog(cyclic_group(static_cast<unsigned>(p)), p);
    auto ctx = group_ctx(cat);
    auto triv = trivial_over_fpcp(ctx, p);
    auto ext = ext_data(ctx, triv);
    CHECK(ext.dims[0] == 1);  // E^0 = M^+ = socle

    // oracle: dualize the explicit periodic resolution
    //   ... -> L -(g-1)-> L -N-> L -(g-1)-> L -> k -> 0
    // where N = sum g^i; cohomology of Hom(-, L) at depths 1 and 2
    const Fq& f = ctx.field();
    auto gm1 = triv.A[0];
    auto N = ctx.L->zero_vec();
    for (size_t i = 0; i < p; ++i) N[i] = f.one();
    Presentation<Fq> presN = triv;
    presN.A = {N};
    auto L1 = left_mult_flatten(triv);   // multiplication by g-1
    auto LN = left_mult_flatten(presN);  // multiplication by N
    // E^1_oracle = ker(N .) / im((g-1) .), E^2_oracle = ker((g-1) .) / im(N .)
    size_t e1 = (LN.cols - mat_rank(f, LN)) - mat_rank(f, L1);
    size_t e2 = (L1.cols - mat_rank(f, L1)) - mat_rank(f, LN);
    CHECK(ext.dims[1] == e1);
    CHECK(ext.dims[2] == e2);
    // finite group algebras are self-injective: both vanish
    CHECK(e1 == 0);
    CHECK(e2 == 0);
    (void)gm1;
  }

  // projective module: E^1 = E^2 = 0
  {
    auto cat = build_mod_catalog(symmetric_group(3), 3);
    auto ctx = group_ctx(cat);
    Presentation<Fq> freeP;
    freeP.L = ctx.L;
    freeP.rows = 0;
    freeP.cols = 2;
    freeP.A = {};
    auto ext = ext_data(ctx, freeP);
    CHECK(ext.dims[0] == 12);
    CHECK(ext.dims[1] == 0);
    CHECK(ext.dims[2] == 0);
  }

  // F_3[S3] trivial module: dims match a by-hand length-3 resolution route
  {
    auto cat = build_mod_catalog(symmetric_group(3), 3);
    auto ctx = group_ctx(cat);
    // present k by the augmentation relations of the two generators
    Presentation<Fq> P;
    P.L = ctx.L;
    P.rows = 2;
    P.cols = 1;
    auto r1 = ctx.L->zero_vec(), r2 = ctx.L->zero_vec();
    auto gens = cat.g.gens;
    r1[gens[0]] = ctx.field().one();
    r1[cat.g.id] = ctx.field().neg(ctx.field().one());
    r2[gens[1]] = ctx.field().one();
    r2[cat.g.id] = ctx.field().neg(ctx.field().one());
    P.A = {r1, r2};
    auto M = coker_module(ctx, P).first;
    REQUIRE(M.dim == 1);
    auto ext = ext_data(ctx, P);
    CHECK(ext.dims[1] == 0);
    CHECK(ext.dims[2] == 0);
  }
}

TEST_CASE("transpose sequence exactness") {
  // free module: 0 -> 0 -> L = L -> 0 -> 0
  {
    auto cat = build_mod_catalog(cyclic_group(2), 2);
    auto ctx = group_ctx(cat);
    Presentation<Fq> freeP;
    freeP.L = ctx.L;
    freeP.rows = 0;
    freeP.cols = 1;
    freeP.A = {};
    auto rep = transpose_sequence_check(ctx, freeP);
    CHECK(rep.dim_M == 2);
    CHECK(rep.dim_Mpp == 2);
    CHECK(rep.dim_e1_dm == 0);
    CHECK(rep.dim_e2_dm == 0);
    CHECK(rep.exact);
  }
  // trivial module over F_p[C_p]
  for (unsigned long p : {2ul, 3ul}) {
    auto cat = build_mod_catalog(cyclic_group(static_cast<unsigned>(p)), p);
    auto ctx = group_ctx(cat);
    auto rep = transpose_sequence_check(ctx, trivial_over_fpcp(ctx, p));
    CHECK(rep.dim_M == 1);
    CHECK(rep.exact);
  }
  // random presentations across several bundled algebras
  {
    Rng rng(2468);
    for (auto [gi, p] : std::vector<std::pair<int, unsigned long>>{{0, 2}, {0, 3}, {1, 2}}) {
      auto g = gi == 0 ? symmetric_group(3) : dihedral_group(4);
      auto cat = build_mod_catalog(g, p);
      auto ctx = group_ctx(cat);
      for (int t = 0; t < 10; ++t) {
        auto P = random_presentation(ctx, rng);
        auto rep = transpose_sequence_check(ctx, P);
        CHECK(rep.exact);
      }
    }
  }
}

TEST_CASE("D o D stable identity") {
  // projective: both cores vanish
  {
    auto cat = build_mod_catalog(symmetric_group(3), 2);
    auto ctx = group_ctx(cat);
    Presentation<Fq> freeP;
    freeP.L = ctx.L;
    freeP.rows = 0;
    freeP.cols = 1;
    freeP.A = {};
    auto rep = dd_stable_identity_check(ctx, freeP);
    CHECK(rep.core_m == 0);
    CHECK(rep.core_ddm == 0);
    CHECK(rep.isomorphic);
  }
  // trivial module over F_p[C_p]: the core of DDk is k again
  for (unsigned long p : {2ul, 3ul}) {
    auto cat = build_mod_catalog(cyclic_group(static_cast<unsigned>(p)), p);
    auto ctx = group_ctx(cat);
    auto rep = dd_stable_identity_check(ctx, trivial_over_fpcp(ctx, p));
    CHECK(rep.core_m == 1);
    CHECK(rep.core_ddm == 1);
    CHECK(rep.isomorphic);
  }
  // random presentations
  {
    Rng rng(13579);
    for (auto [gi, p] : std::vector<std::pair<int, unsigned long>>{{0, 3}, {1, 2}}) {
      auto g = gi == 0 ? symmetric_group(3) : dihedral_group(4);
      auto cat = build_mod_catalog(g, p);
      auto ctx = group_ctx(cat);
      for (int t = 0; t < 10; ++t) {
        auto P = random_presentation(ctx, rng);
        auto rep = dd_stable_identity_check(ctx, P, rng.next());
        CHECK(rep.isomorphic);
      }
    }
  }
}

TEST_CASE("homotopy over a truncated crossed product") {
  // the residue algebra at (p) for H = C4 x| inversion is local: its single
  // PIM is the regular module
  auto c4 = cyclic_group(4);
  auto spec = make_spec(2, c4, inversion_automorphism(c4), 8, 12, "C4:inv");
  auto res = residue_algebra_P(spec);

  auto ctx = residue_homotopy_ctx(res, spec);
  const auto& g = res.finite_quotient;
  const auto& L = res.base;

  // sanity: sharp is an anti-homomorphism on the algebra
  Rng rng(55);
  for (int t = 0; t < 10; ++t) {
    auto x = res.algebra->zero_vec();
    auto y = res.algebra->zero_vec();
    x[rng.below(g.n)] = integral_random(L, rng);
    y[rng.below(g.n)] = integral_random(L, rng);
    auto lhs = ctx.sharp.apply(*res.algebra, res.algebra->mul(x, y));
    auto rhs = res.algebra->mul(ctx.sharp.apply(*res.algebra, y), ctx.sharp.apply(*res.algebra, x));
    CHECK(res.algebra->eq(lhs, rhs));
  }

  // transpose sequence and dd on random presentations
  for (int t = 0; t < 4; ++t) {
    auto Pr = random_presentation(ctx, rng);
    auto rep = transpose_sequence_check(ctx, Pr);
    CHECK(rep.exact);
    auto dd = dd_stable_identity_check(ctx, Pr, rng.next());
    CHECK(dd.isomorphic);
  }
}
