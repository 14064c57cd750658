#include "workbench/iwasawa.hpp"

#include <algorithm>

#include "workbench/smith.hpp"

namespace workbench {

OneDimGroupSpec make_spec(unsigned long p, FiniteGroup H, Automorphism phi, unsigned a, long m,
                          std::string name) {
  OneDimGroupSpec spec;
  spec.p = p;
  require(is_prime_u64(p), errc::bad_input, "p must be prime");
  require(is_automorphism(H, phi), errc::not_an_automorphism, "phi is not an automorphism of H");
  unsigned ord = automorphism_order(H, phi);
  unsigned n = 0;
  unsigned long pk = 1;
  while (pk != ord) {
    require(pk < ord && pk <= (1u << 16), errc::not_an_automorphism,
            "phi must have p-power order");
    pk *= p;
    ++n;
  }
  spec.H = std::move(H);
  spec.phi = std::move(phi);
  spec.n = n;
  spec.a = a;
  spec.m = m;
  spec.name = name.empty() ? spec.H.name + "@p" + std::to_string(p) : std::move(name);
  require(spec.dim() * static_cast<size_t>(m) <= 4096, errc::unsupported_order,
          "truncated algebra too large");
  return spec;
}

bool IwasawaAlgebra::eq(const Elem& x, const Elem& y) const {
  for (size_t i = 0; i < x.size(); ++i)
    if (!coeff.eq(x[i], y[i])) return false;
  return true;
}
bool IwasawaAlgebra::is_zero(const Elem& x) const {
  for (const auto& c : x)
    if (!coeff.is_zero(c)) return false;
  return true;
}
IwasawaAlgebra::Elem IwasawaAlgebra::add(const Elem& x, const Elem& y) const {
  Elem r = x;
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff.add(r[i], y[i]);
  return r;
}
IwasawaAlgebra::Elem IwasawaAlgebra::sub(const Elem& x, const Elem& y) const {
  Elem r = x;
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff.sub(r[i], y[i]);
  return r;
}
IwasawaAlgebra::Elem IwasawaAlgebra::scale(const TruncEl& c, const Elem& x) const {
  Elem r = x;
  for (auto& v : r) v = coeff.mul(c, v);
  return r;
}

IwasawaAlgebra::Elem IwasawaAlgebra::mul(const Elem& x, const Elem& y) const {
  size_t P = spec.pn();
  Elem r = zero();
  auto one_plus_t = coeff.add(coeff.one(), coeff.monomial(1));
  for (uint16_t h1 = 0; h1 < spec.H.n; ++h1)
    for (size_t i1 = 0; i1 < P; ++i1) {
      const auto& c1 = x[idx(h1, i1)];
      if (coeff.is_zero(c1)) continue;
      auto phi_i1 = automorphism_power(spec.H, spec.phi, i1);
      for (uint16_t h2 = 0; h2 < spec.H.n; ++h2)
        for (size_t i2 = 0; i2 < P; ++i2) {
          const auto& c2 = y[idx(h2, i2)];
          if (coeff.is_zero(c2)) continue;
          // (h1 g^i1)(h2 g^i2) = h1 phi^i1(h2) g^(i1+i2), g^(p^n) = 1+T
          uint16_t h = spec.H.mul(h1, phi_i1[h2]);
          size_t i = i1 + i2;
          auto c = coeff.mul(c1, c2);
          if (i >= P) {
            i -= P;
            c = coeff.mul(c, one_plus_t);
          }
          r[idx(h, i)] = coeff.add(r[idx(h, i)], c);
        }
    }
  return r;
}

IwasawaAlgebra::Elem IwasawaAlgebra::sharp(const Elem& x) const {
  size_t P = spec.pn();
  Elem r = zero();
  auto inv_1pt = coeff.inv(coeff.add(coeff.one(), coeff.monomial(1)));
  for (uint16_t h = 0; h < spec.H.n; ++h)
    for (size_t i = 0; i < P; ++i) {
      const auto& c = x[idx(h, i)];
      if (coeff.is_zero(c)) continue;
      auto cs = coeff.sharp_substitute(c);
      uint16_t hinv = spec.H.invert(h);
      if (i == 0) {
        r[idx(hinv, 0)] = coeff.add(r[idx(hinv, 0)], cs);
      } else {
        // (h g^i)^sharp = g^(-i) h^(-1) = phi^(p^n - i)(h^(-1)) g^(p^n - i) (1+T)^(-1)
        size_t j = P - i;
        auto phi_j = automorphism_power(spec.H, spec.phi, j);
        uint16_t target = phi_j[hinv];
        auto cc = coeff.mul(cs, inv_1pt);
        r[idx(target, j)] = coeff.add(r[idx(target, j)], cc);
      }
    }
  return r;
}

uint64_t IwasawaAlgebra::augmentation(const Elem& x) const {
  uint64_t acc = 0;
  for (const auto& c : x) {
    if (coeff.is_zero(c)) continue;
    if (c.v == 0) acc = coeff.base.add(acc, c.c[0]);
  }
  return acc;
}

IwasawaAlgebra::Elem IwasawaAlgebra::random(Rng& rng) const {
  Elem r = zero();
  size_t terms = 1 + rng.below(3);
  for (size_t t = 0; t < terms; ++t) {
    size_t pos = rng.below(dim());
    std::vector<uint64_t> cs;
    size_t len = 1 + rng.below(3);
    for (size_t k = 0; k < len; ++k) cs.push_back(rng.below(coeff.base.pa));
    r[pos] = coeff.add(r[pos], coeff.canon(static_cast<long>(rng.below(3)), std::move(cs)));
  }
  return r;
}

// ---------------------------------------------------------------------------
// residue algebras
// ---------------------------------------------------------------------------

namespace {

FiniteGroup finite_quotient_group(const OneDimGroupSpec& spec) {
  // H x| C_{p^n} through phi; for n = 0 this is H itself
  if (spec.pn() == 1) {
    FiniteGroup g = spec.H;
    return g;
  }
  return semidirect_product(spec.H, spec.phi, static_cast<unsigned>(spec.pn()));
}

}  // namespace

ResidueAlgebraT residue_algebra_T(const OneDimGroupSpec& spec) {
  ResidueAlgebraT res;
  res.finite_quotient = finite_quotient_group(spec);
  Rationals Q;
  res.algebra = std::make_shared<FDAlgebra<Rationals>>(group_algebra(Q, res.finite_quotient));
  res.radical_dim = radical(*res.algebra).basis.dimension();
  require(res.radical_dim == 0, errc::bad_input, "characteristic-zero group algebra not semisimple");
  res.simple_count = rational_class_count(res.finite_quotient);
  return res;
}

ResidueAlgebraP residue_algebra_P(const OneDimGroupSpec& spec) {
  ResidueAlgebraP res;
  res.finite_quotient = finite_quotient_group(spec);
  res.base = Trunc(spec.p, 1, spec.m, true);
  const auto& g = res.finite_quotient;
  size_t P = spec.pn();
  // cocycle: (h1, i1) * (h2, i2) carries (1+T) when i1 + i2 wraps past p^n;
  // the finite-quotient index of (h, i) is h * p^n + i by construction
  std::vector<TruncEl> tau(g.n * g.n, res.base.one());
  auto one_plus_t = res.base.add(res.base.one(), res.base.monomial(1));
  for (size_t x = 0; x < g.n; ++x)
    for (size_t y = 0; y < g.n; ++y) {
      size_t i1 = x % P, i2 = y % P;
      if (i1 + i2 >= P && P > 1) tau[x * g.n + y] = one_plus_t;
    }
  res.algebra = std::make_shared<FDAlgebra<Trunc>>(crossed_product(res.base, g, tau));
  return res;
}

// ---------------------------------------------------------------------------
// certificates
// ---------------------------------------------------------------------------

RadicalCertificate propp_radical_certificate(const OneDimGroupSpec& spec) {
  require(spec.H.n == 1 || spec.H.is_p_group(spec.p), errc::not_p_group,
          "certificate requires H to be a p-group");
  auto res = residue_algebra_P(spec);
  const auto& A = *res.algebra;
  const auto& L = res.base;
  size_t P = spec.pn();

  RadicalCertificate cert;
  // Delta(H): left ideal generated by h - 1 for h in H; two-sided closure
  std::vector<std::vector<TruncEl>> gens;
  for (uint16_t h = 1; h < spec.H.n; ++h) {
    auto v = A.zero_vec();
    v[h * P] = L.one();
    v[spec.H.id * P] = L.neg(L.one());
    gens.push_back(std::move(v));
  }
  Subspace<Trunc> ideal =
      gens.empty() ? make_span(L, A.dim, std::vector<std::vector<TruncEl>>{})
                   : detail::ideal_closure(A, gens);
  cert.ideal_dim = ideal.dimension();
  cert.nilpotency = nilpotency_index(A, ideal);
  if (cert.nilpotency == 0) return cert;  // not nilpotent: certificate fails

  auto qa = quotient_algebra(A, ideal);
  cert.quotient_dim = qa.algebra.dim;
  // commutativity of the quotient
  cert.quotient_commutative = true;
  for (size_t i = 0; i < qa.algebra.dim && cert.quotient_commutative; ++i)
    for (size_t j = 0; j < qa.algebra.dim; ++j) {
      auto xy = qa.algebra.mul(qa.algebra.basis_vec(i), qa.algebra.basis_vec(j));
      auto yx = qa.algebra.mul(qa.algebra.basis_vec(j), qa.algebra.basis_vec(i));
      if (!qa.algebra.eq(xy, yx)) {
        cert.quotient_commutative = false;
        break;
      }
    }
  // generator x = image of u_gamma, relation x^(p^n) = 1 + T, power basis
  auto ugamma = A.zero_vec();
  ugamma[spec.H.id * P + (P > 1 ? 1 : 0)] = L.one();
  auto x = mat_vec(L, qa.project, ugamma);
  auto xp = x;
  if (P == 1) {
    // n = 0: gamma itself maps to 1 + T
    cert.generator_relation = true;
    cert.power_basis = (cert.quotient_dim == 1);
  } else {
    std::vector<std::vector<TruncEl>> powers;
    auto cur = qa.algebra.unity;
    for (size_t k = 0; k < P; ++k) {
      powers.push_back(cur);
      cur = qa.algebra.mul(cur, x);
    }
    // cur = x^(p^n); compare against (1 + T) * 1
    auto target = qa.algebra.scale(L.add(L.one(), L.monomial(1)), qa.algebra.unity);
    cert.generator_relation = qa.algebra.eq(cur, target);
    auto sp = make_span(L, qa.algebra.dim, powers);
    cert.power_basis = (sp.dimension() == P && cert.quotient_dim == P);
  }
  (void)xp;
  // inseparability certificate: 1 + T has no p-th root at this truncation
  auto one_plus_t = L.add(L.one(), L.monomial(1));
  cert.not_pth_power = !is_pth_power(L, one_plus_t);
  cert.pass = cert.quotient_commutative && cert.generator_relation && cert.power_basis &&
              cert.not_pth_power && cert.nilpotency >= 1;
  return cert;
}

CartanData propp_cartan_data(const OneDimGroupSpec& spec) {
  auto cert = propp_radical_certificate(spec);
  require(cert.pass, errc::certificate_missing, "radical certificate did not pass");
  auto res = residue_algebra_P(spec);
  const auto& A = *res.algebra;
  const auto& L = res.base;
  size_t P = spec.pn();

  CartanData data;
  data.simple_count = 1;
  // composition length of the regular module over the unique simple of
  // dimension p^n: the plain dimension ratio
  require(A.dim % P == 0, errc::bad_input, "dimension not divisible by p^n");
  data.cartan_entry = A.dim / P;

  // independent route: the Delta(H)-adic filtration, one layer at a time
  std::vector<std::vector<TruncEl>> gens;
  for (uint16_t h = 1; h < spec.H.n; ++h) {
    auto v = A.zero_vec();
    v[h * P] = L.one();
    v[spec.H.id * P] = L.neg(L.one());
    gens.push_back(std::move(v));
  }
  size_t length = 0;
  if (gens.empty()) {
    length = A.dim / P;
  } else {
    auto ideal = detail::ideal_closure(A, gens);
    size_t prev = A.dim;
    auto layer = ideal;
    for (;;) {
      size_t cur = layer.dimension();
      require((prev - cur) % P == 0, errc::bad_input, "filtration layer not a simple multiple");
      length += (prev - cur) / P;
      if (cur == 0) break;
      prev = cur;
      layer = detail::span_product(A, layer, ideal);
    }
  }
  data.filtration_entry = length;
  data.cokernel_index = data.cartan_entry;
  data.injective = data.cartan_entry != 0;
  data.pass = data.injective && data.cartan_entry == data.filtration_entry &&
              data.cartan_entry == spec.H.n;
  return data;
}

AugIdealReport aug_ideal_generator_check(const OneDimGroupSpec& spec) {
  require(spec.H.n % spec.p != 0, errc::p_divides_h, "requires p prime to |H|");
  IwasawaAlgebra A(spec);
  const auto& C = A.coeff;
  size_t P = spec.pn();

  // e_H = |H|^(-1) sum_h h ; w = (1 - gamma) e_H + (1 - e_H)
  auto eH = A.zero();
  auto hinv = C.base.inv(C.base.from_int(static_cast<long>(spec.H.n)));
  for (uint16_t h = 0; h < spec.H.n; ++h)
    eH[A.idx(h, 0)] = C.monomial(0, hinv);
  auto one = A.one();
  auto w = A.add(A.mul(A.sub(one, A.gamma()), eH), A.sub(one, eH));

  AugIdealReport rep;
  rep.augmentation_zero = (A.augmentation(w) == 0);

  // flatten right multiplication by w over Z/p^a: coordinates (h, i, T^k)
  Zpa Z(spec.p, spec.a);
  size_t N = A.dim() * static_cast<size_t>(spec.m);
  Matrix<Zpa::Elem> M(N, N, 0);
  for (uint16_t h = 0; h < spec.H.n; ++h)
    for (size_t i = 0; i < P; ++i)
      for (long k = 0; k < spec.m; ++k) {
        auto basis = A.zero();
        basis[A.idx(h, i)] = C.monomial(k);
        auto prod = A.mul(basis, w);
        size_t col = (A.idx(h, i)) * spec.m + static_cast<size_t>(k);
        for (size_t pos = 0; pos < A.dim(); ++pos) {
          const auto& ser = prod[pos];
          for (size_t t = 0; t < ser.c.size(); ++t) {
            long e = ser.v + static_cast<long>(t);
            if (e < 0 || e >= spec.m) continue;
            M.at(pos * spec.m + static_cast<size_t>(e), col) = ser.c[t];
          }
        }
      }
  auto sf = smith_normal_form(Z, M);

  auto solve_with = [&](const IwasawaAlgebra::Elem& target) -> bool {
    std::vector<Zpa::Elem> b(N, 0);
    for (size_t pos = 0; pos < A.dim(); ++pos) {
      const auto& ser = target[pos];
      for (size_t t = 0; t < ser.c.size(); ++t) {
        long e = ser.v + static_cast<long>(t);
        if (e < 0 || e >= spec.m) continue;
        b[pos * spec.m + static_cast<size_t>(e)] = ser.c[t];
      }
    }
    auto c = mat_vec(Z, sf.left, b);
    for (size_t i = 0; i < N; ++i) {
      if (i < sf.diag.size() && sf.diag[i] < sf.cap) {
        if (c[i] == 0) continue;
        if (Z.val(c[i]) < sf.diag[i]) return false;
      } else {
        if (c[i] != 0) return false;
      }
    }
    return true;
  };

  // targets: h - 1 for every nontrivial h, and gamma - 1
  std::vector<IwasawaAlgebra::Elem> targets;
  for (uint16_t h = 1; h < spec.H.n; ++h) targets.push_back(A.sub(A.group_elem(h), one));
  targets.push_back(A.sub(A.gamma(), one));
  rep.targets_checked = static_cast<unsigned>(targets.size());
  for (const auto& t : targets)
    if (solve_with(t)) ++rep.targets_in_ideal;
  rep.pass = rep.augmentation_zero && rep.targets_in_ideal == rep.targets_checked;
  require(rep.targets_in_ideal == rep.targets_checked, errc::membership_failure,
          "augmentation ideal membership failed at working precision");
  return rep;
}

}  // namespace workbench
