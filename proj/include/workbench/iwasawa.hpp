#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "workbench/fdalgebra.hpp"
#include "workbench/group.hpp"
#include "workbench/qcatalog.hpp"
#include "workbench/rings.hpp"

namespace workbench {

// one-dimensional p-adic group data: G = H x| Gamma with gamma acting on H
// through phi; n is minimal with phi^(p^n) = id and is computed, not supplied
struct OneDimGroupSpec {
  unsigned long p = 2;
  FiniteGroup H;
  Automorphism phi;
  unsigned n = 0;
  unsigned a = 8;  // p-adic digits
  long m = 32;     // T-precision
  std::string name;

  size_t pn() const { return pow_u64(p, n); }
  size_t dim() const { return H.n * pn(); }
};

OneDimGroupSpec make_spec(unsigned long p, FiniteGroup H, Automorphism phi, unsigned a = 8,
                          long m = 32, std::string name = "");

// truncated Lambda(G): coefficients indexed by (h, i) with the relations
// gamma h = phi(h) gamma and gamma^(p^n) = 1 + T
struct IwasawaAlgebra {
  OneDimGroupSpec spec;
  Trunc coeff;  // power series over Z/p^a

  explicit IwasawaAlgebra(OneDimGroupSpec s)
      : spec(std::move(s)), coeff(spec.p, spec.a, spec.m) {}

  using Elem = std::vector<TruncEl>;  // size H.n * p^n, index h * p^n + i

  size_t dim() const { return spec.dim(); }
  size_t idx(uint16_t h, size_t i) const { return h * spec.pn() + i; }

  Elem zero() const { return Elem(dim()); }
  Elem one() const {
    auto e = zero();
    e[idx(spec.H.id, 0)] = coeff.one();
    return e;
  }
  Elem group_elem(uint16_t h) const {
    auto e = zero();
    e[idx(h, 0)] = coeff.one();
    return e;
  }
  // the topological generator gamma; for n = 0 it is 1 + T itself
  Elem gamma() const {
    auto e = zero();
    if (spec.pn() == 1)
      e[idx(spec.H.id, 0)] = coeff.add(coeff.one(), coeff.monomial(1));
    else
      e[idx(spec.H.id, 1)] = coeff.one();
    return e;
  }

  bool eq(const Elem& x, const Elem& y) const;
  bool is_zero(const Elem& x) const;
  Elem add(const Elem& x, const Elem& y) const;
  Elem sub(const Elem& x, const Elem& y) const;
  Elem mul(const Elem& x, const Elem& y) const;
  Elem scale(const TruncEl& c, const Elem& x) const;

  Elem sharp(const Elem& x) const;
  uint64_t augmentation(const Elem& x) const;  // value in Z/p^a
  Elem random(Rng& rng) const;
};

// residue algebra at one of the two supported height-1 primes
struct ResidueAlgebraT {
  FiniteGroup finite_quotient;  // H x| C_{p^n}
  std::shared_ptr<FDAlgebra<Rationals>> algebra;
  size_t radical_dim = 0;
  size_t simple_count = 0;  // Cartan matrix is the identity of this size
};
struct ResidueAlgebraP {
  FiniteGroup finite_quotient;
  Trunc base;  // truncated F_p Laurent field
  std::shared_ptr<FDAlgebra<Trunc>> algebra;
};

ResidueAlgebraT residue_algebra_T(const OneDimGroupSpec& spec);
ResidueAlgebraP residue_algebra_P(const OneDimGroupSpec& spec);

// radical certificate at (p) for p-group H: Delta(H) is the radical and the
// quotient is the field F_p((T))[x]/(x^(p^n) - (1+T))
struct RadicalCertificate {
  size_t ideal_dim = 0;
  unsigned nilpotency = 1;
  size_t quotient_dim = 0;
  bool quotient_commutative = false;
  bool generator_relation = false;  // x^(p^n) = 1 + T in the quotient
  bool power_basis = false;         // 1, x, ..., x^(p^n - 1) spans
  bool not_pth_power = false;       // 1 + T has no p-th root: the quotient is a field
  bool pass = false;
};
RadicalCertificate propp_radical_certificate(const OneDimGroupSpec& spec);

struct CartanData {
  size_t simple_count = 1;
  size_t cartan_entry = 0;    // composition length of the regular module
  size_t filtration_entry = 0;  // independent count through the Delta(H) filtration
  size_t cokernel_index = 0;
  bool injective = false;
  bool pass = false;
};
CartanData propp_cartan_data(const OneDimGroupSpec& spec);

// the explicit generator w = (1 - gamma) e_H + (1 - e_H) of the localized
// augmentation ideal: augmentation-zero plus membership of h - 1 and
// gamma - 1 in the left ideal it generates, all at working precision
struct AugIdealReport {
  bool augmentation_zero = false;
  unsigned targets_checked = 0;
  unsigned targets_in_ideal = 0;
  bool pass = false;
};
AugIdealReport aug_ideal_generator_check(const OneDimGroupSpec& spec);

}  // namespace workbench

#include "workbench/homotopy.hpp"

namespace workbench {

// homotopy context over the residue algebra at (p): the sharp involution
// substitutes T -> (1+T)^{-1} - 1 in the coefficients, so its target is the
// cocycle-twisted partner algebra
inline HomotopyCtx<Trunc> residue_homotopy_ctx(const ResidueAlgebraP& res,
                                               const OneDimGroupSpec& spec) {
  const auto& g = res.finite_quotient;
  const Trunc& L = res.base;
  size_t P = spec.pn();
  auto one_plus_t = L.add(L.one(), L.monomial(1));
  auto inv1pt = L.inv(one_plus_t);

  // twisted cocycle sigma(tau)
  std::vector<TruncEl> tau_sigma(g.n * g.n, L.one());
  for (size_t x = 0; x < g.n; ++x)
    for (size_t y = 0; y < g.n; ++y) {
      size_t i1 = x % P, i2 = y % P;
      if (P > 1 && i1 + i2 >= P) tau_sigma[x * g.n + y] = inv1pt;
    }
  auto twisted = std::make_shared<FDAlgebra<Trunc>>(crossed_product(L, g, tau_sigma));

  HomotopyCtx<Trunc> ctx;
  ctx.L = res.algebra;
  ctx.Lsharp = twisted;
  SharpData<Trunc> fwd, back;
  fwd.perm.resize(g.n);
  fwd.unit.assign(g.n, L.one());
  back.perm.resize(g.n);
  back.unit.assign(g.n, L.one());
  for (uint16_t x = 0; x < g.n; ++x) {
    fwd.perm[x] = g.invert(x);
    back.perm[x] = g.invert(x);
    size_t i = x % P;
    if (i != 0) {
      fwd.unit[x] = inv1pt;       // (h g^i)^sharp picks up (gamma^(p^n))^{-1}
      back.unit[x] = one_plus_t;  // over the twisted algebra gamma^(p^n) = (1+T)^{-1}
    }
  }
  fwd.twist = [](const Trunc& f, const TruncEl& c) { return f.sharp_substitute(c); };
  back.twist = fwd.twist;
  ctx.sharp = fwd;
  ctx.sharp_back = back;
  ctx.pims = {regular_module(std::shared_ptr<const FDAlgebra<Trunc>>(res.algebra))};
  ctx.pims_sharp = {regular_module(std::shared_ptr<const FDAlgebra<Trunc>>(twisted))};
  return ctx;
}

}  // namespace workbench
