#pragma once

#include "workbench/fdalgebra.hpp"

namespace workbench {

namespace detail {

// minimal polynomial of z inside an algebra, via its multiplication action
template <typename F>
PolyOf<F> algebra_minpoly(const FDAlgebra<F>& C, const std::vector<typename F::Elem>& z) {
  auto next = [&](const std::vector<typename F::Elem>& v) { return C.mul(v, z); };
  return minpoly_by_powers(C.field, C.dim, C.unity, next, C.dim + 1);
}

template <typename F>
std::vector<typename F::Elem> eval_in_algebra(const FDAlgebra<F>& C, const PolyOf<F>& f,
                                              const std::vector<typename F::Elem>& z) {
  auto acc = C.zero_vec();
  for (size_t i = f.size(); i-- > 0;) {
    acc = C.mul(acc, z);
    acc = C.add(acc, C.scale(f[i], C.unity));
  }
  return acc;
}

// split from an element whose minpoly has >= 2 coprime parts: CRT idempotent
// in the commutative subalgebra generated by z
template <typename F>
std::optional<std::vector<typename F::Elem>> crt_idempotent(
    const FDAlgebra<F>& C, const std::vector<typename F::Elem>& z,
    const std::vector<std::pair<PolyOf<F>, unsigned>>& facs) {
  if (facs.size() < 2) return std::nullopt;
  const F& field = C.field;
  // m = f * g coprime, f = first irreducible power
  PolyOf<F> f{field.one()};
  for (unsigned i = 0; i < facs[0].second; ++i) f = polyops::mul(field, f, facs[0].first);
  PolyOf<F> g{field.one()};
  for (size_t k = 1; k < facs.size(); ++k)
    for (unsigned i = 0; i < facs[k].second; ++i) g = polyops::mul(field, g, facs[k].first);
  // Bezout u f + v g = 1
  PolyOf<F> r0 = f, r1 = g, t0{}, t1{field.one()};
  while (!r1.empty()) {
    auto qr = polyops::divmod(field, r0, r1);
    auto nt = polyops::sub(field, t0, polyops::mul(field, qr.first, t1));
    r0 = std::move(r1);
    r1 = std::move(qr.second);
    t0 = std::move(t1);
    t1 = std::move(nt);
  }
  require(polyops::degree<F>(r0) == 0, errc::bad_input, "coprime split failed");
  auto v = polyops::scale(field, field.inv(r0[0]), t0);  // v g = 1 mod f
  auto h = eval_in_algebra(C, polyops::mul(field, v, g), z);
  if (C.is_zero(h) || C.eq(h, C.unity)) return std::nullopt;
  require(C.eq(C.mul(h, h), h), errc::bad_input, "CRT element is not idempotent");
  return h;
}

// split from a zero divisor: idempotent right-identity generator of the
// proper left ideal C z
template <typename F>
std::optional<std::vector<typename F::Elem>> ideal_idempotent(
    const FDAlgebra<F>& C, const std::vector<typename F::Elem>& z) {
  const F& field = C.field;
  std::vector<std::vector<typename F::Elem>> gen;
  for (size_t i = 0; i < C.dim; ++i) gen.push_back(C.mul(C.basis_vec(i), z));
  auto L = make_span(field, C.dim, gen);
  size_t t = L.dimension();
  if (t == 0 || t == C.dim) return std::nullopt;
  auto lb = span_vectors(L);
  // x = sum mu_k l_k with l_i x = l_i for all i
  Matrix<typename F::Elem> sys(t * C.dim, t, field.zero());
  std::vector<typename F::Elem> rhs(t * C.dim, field.zero());
  for (size_t i = 0; i < t; ++i) {
    for (size_t k = 0; k < t; ++k) {
      auto prod = C.mul(lb[i], lb[k]);
      for (size_t d = 0; d < C.dim; ++d) sys.at(i * C.dim + d, k) = prod[d];
    }
    for (size_t d = 0; d < C.dim; ++d) rhs[i * C.dim + d] = lb[i][d];
  }
  auto mu = solve_field(field, sys, rhs);
  if (!mu) return std::nullopt;  // not semisimple
  auto x = C.zero_vec();
  for (size_t k = 0; k < t; ++k) x = C.add(x, C.scale((*mu)[k], lb[k]));
  if (C.is_zero(x) || C.eq(x, C.unity)) return std::nullopt;
  require(C.eq(C.mul(x, x), x), errc::bad_input, "ideal generator is not idempotent");
  return x;
}

// try to produce a nontrivial idempotent of C from element z
template <typename F, typename FactorFn>
std::optional<std::vector<typename F::Elem>> idempotent_from_element(
    const FDAlgebra<F>& C, const std::vector<typename F::Elem>& z, FactorFn factor) {
  if (C.is_zero(z)) return std::nullopt;
  auto m = algebra_minpoly(C, z);
  if (polyops::degree<F>(m) <= 0) return std::nullopt;
  auto facs = factor(m);
  if (facs.size() >= 2) {
    if (auto h = crt_idempotent(C, z, facs)) return h;
  }
  if (facs.size() == 1 && facs[0].second >= 2) {
    // f(z) is a nonzero nilpotent; its left ideal splits off
    auto w = eval_in_algebra(C, facs[0].first, z);
    if (auto h = ideal_idempotent(C, w)) return h;
  }
  if (facs.size() == 1 && facs[0].second == 1 && !C.field.is_zero(facs[0].first[0])) {
    return std::nullopt;  // irreducible with nonzero constant: z is a unit, no information
  }
  if (facs.size() == 1 && facs[0].second == 1) {
    // minpoly = x: z = 0 handled above; x divides: z zero divisor
    if (auto h = ideal_idempotent(C, z)) return h;
  }
  return std::nullopt;
}

// deterministic candidate stream for the splitting search
template <typename F>
std::vector<typename F::Elem> candidate_element(const FDAlgebra<F>& C, size_t k, Rng& rng) {
  if (k < C.dim) return C.basis_vec(k);
  size_t pairs = C.dim * C.dim;
  if (k < C.dim + pairs) {
    size_t t = k - C.dim;
    return C.add(C.basis_vec(t / C.dim), C.basis_vec(t % C.dim));
  }
  std::vector<typename F::Elem> v(C.dim);
  for (auto& x : v) x = C.field.random(rng);
  return v;
}

}  // namespace detail

// primitive orthogonal idempotent decomposition of the identity of a
// semisimple algebra
template <typename F>
std::vector<std::vector<typename F::Elem>> primitive_idempotents(const FDAlgebra<F>& S,
                                                                 uint64_t seed) {
  const F& field = S.field;
  auto factor = [&](const PolyOf<F>& m) {
    if constexpr (std::is_same_v<F, Fq>)
      return fq_factor(field, m);
    else
      return q_factor(m);
  };

  std::vector<std::vector<typename F::Elem>> done;
  std::vector<std::vector<typename F::Elem>> work{S.unity};
  Rng rng(seed);
  while (!work.empty()) {
    auto e = work.back();
    work.pop_back();
    auto [C, incl] = corner_algebra(S, e);
    if (C.dim == 1) {
      done.push_back(e);
      continue;
    }
    std::optional<std::vector<typename F::Elem>> split;

    if constexpr (std::is_same_v<F, Fq>) {
      // exhaustive sweep certifies division corners for small q^dim
      mpz_class total = 1;
      for (size_t i = 0; i < C.dim && total <= 65536; ++i) total *= static_cast<long>(field.q);
      if (total <= 65536) {
        uint64_t count = 1;
        for (size_t i = 0; i < C.dim; ++i) count *= field.q;
        for (uint64_t code = 1; code < count && !split; ++code) {
          std::vector<typename F::Elem> z(C.dim);
          uint64_t t = code;
          for (size_t i = 0; i < C.dim; ++i) {
            z[i] = field.from_index(t % field.q);
            t /= field.q;
          }
          split = detail::idempotent_from_element(C, z, factor);
        }
      } else {
        for (size_t k = 0; k < C.dim + C.dim * C.dim + 2000 && !split; ++k)
          split = detail::idempotent_from_element(C, detail::candidate_element(C, k, rng), factor);
      }
    } else {
      for (size_t k = 0; k < C.dim + C.dim * C.dim + 300 && !split; ++k)
        split = detail::idempotent_from_element(C, detail::candidate_element(C, k, rng), factor);
    }

    if (!split) {
      done.push_back(e);  // division corner
      continue;
    }
    // map back to S coordinates and recurse on both halves
    auto h_s = S.zero_vec();
    for (size_t i = 0; i < S.dim; ++i)
      for (size_t k = 0; k < C.dim; ++k)
        h_s[i] = field.add(h_s[i], field.mul(incl.at(i, k), (*split)[k]));
    require(S.eq(S.mul(h_s, h_s), h_s), errc::bad_input, "split is not idempotent in S");
    work.push_back(h_s);
    work.push_back(S.sub(e, h_s));
  }
  // orthogonality spot check
  for (size_t i = 0; i < done.size(); ++i)
    for (size_t j = i + 1; j < done.size(); ++j)
      require(S.is_zero(S.mul(done[i], done[j])) && S.is_zero(S.mul(done[j], done[i])),
              errc::bad_input, "idempotents not orthogonal");
  return done;
}

// crossed product of F_q by G acting through Frobenius powers, flattened over
// the prime field (the coefficient field is not central, so structure
// constants live over F_p on the basis x^t u_g)
inline FDAlgebra<Fq> crossed_product_frobenius(const Fq& K, const FiniteGroup& g,
                                               const std::vector<unsigned>& frob_exp,
                                               const std::vector<Fq::Elem>& tau) {
  require(frob_exp.size() == g.n && tau.size() == g.n * g.n, errc::bad_input,
          "crossed product data size mismatch");
  // the action must be a homomorphism into the Frobenius group
  for (size_t x = 0; x < g.n; ++x)
    for (size_t y = 0; y < g.n; ++y)
      require((frob_exp[x] + frob_exp[y]) % K.s == frob_exp[g.mul(static_cast<uint16_t>(x),
                                                                  static_cast<uint16_t>(y))] %
                                                       K.s,
              errc::not_an_automorphism, "Frobenius exponents are not a homomorphism");
  require(frob_exp[g.id] % K.s == 0, errc::not_an_automorphism, "identity must act trivially");
  // twisted cocycle condition tau(x,y) tau(xy,z) = (x . tau(y,z)) tau(x,yz)
  for (size_t x = 0; x < g.n; ++x) {
    require(K.eq(tau[g.id * g.n + x], K.one()) && K.eq(tau[x * g.n + g.id], K.one()),
            errc::cocycle_violation, "cocycle not normalized");
  }
  for (size_t x = 0; x < g.n; ++x)
    for (size_t y = 0; y < g.n; ++y) {
      require(K.is_unit(tau[x * g.n + y]), errc::cocycle_violation, "cocycle value not a unit");
      for (size_t z = 0; z < g.n; ++z) {
        auto xy = g.mul(static_cast<uint16_t>(x), static_cast<uint16_t>(y));
        auto yz = g.mul(static_cast<uint16_t>(y), static_cast<uint16_t>(z));
        auto lhs = K.mul(tau[x * g.n + y], tau[xy * g.n + z]);
        auto rhs = K.mul(K.frobenius(tau[y * g.n + z], frob_exp[x]), tau[x * g.n + yz]);
        require(K.eq(lhs, rhs), errc::cocycle_violation, "twisted cocycle condition fails");
      }
    }

  Fq Fp(K.p, 1);
  size_t s = K.s, dim = s * g.n;
  FDAlgebra<Fq> a;
  a.field = Fp;
  a.dim = dim;
  a.sc.assign(dim * dim, {});
  auto idx = [&](size_t t, size_t gg) { return gg * s + t; };
  for (size_t g1 = 0; g1 < g.n; ++g1)
    for (size_t t1 = 0; t1 < s; ++t1)
      for (size_t g2 = 0; g2 < g.n; ++g2)
        for (size_t t2 = 0; t2 < s; ++t2) {
          // (x^t1 u_g1)(x^t2 u_g2) = x^t1 sigma^e(g1)(x^t2) tau(g1,g2) u_{g1 g2}
          auto xt1 = K.pow(K.gen(), t1);
          auto xt2 = K.pow(K.gen(), t2);
          auto coeff = K.mul(K.mul(xt1, K.frobenius(xt2, frob_exp[g1])), tau[g1 * g.n + g2]);
          auto target = g.mul(static_cast<uint16_t>(g1), static_cast<uint16_t>(g2));
          auto poly = K.unpack(coeff);
          for (size_t t = 0; t < poly.size(); ++t)
            if (poly[t] != 0)
              a.sc[idx(t1, g1) * dim + idx(t2, g2)].emplace_back(
                  static_cast<uint32_t>(idx(t, target)), static_cast<Fq::Elem>(poly[t]));
        }
  a.unity = a.zero_vec();
  a.unity[idx(0, g.id)] = Fp.one();
  for (size_t gg = 0; gg < g.n; ++gg)
    for (size_t t = 0; t < s; ++t) a.labels.push_back("x^" + std::to_string(t) + "u" + std::to_string(gg));
  a.name = K.name() + "*" + g.name + "/F" + std::to_string(K.p);
  a.check_associativity();
  return a;
}

}  // namespace workbench
