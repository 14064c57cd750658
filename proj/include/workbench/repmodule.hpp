#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "workbench/fdalgebra.hpp"

namespace workbench {

// module over an FDAlgebra as explicit matrices acting on column vectors,
// one action matrix per algebra basis element
template <typename F>
struct RepModule {
  using Elem = typename F::Elem;

  std::shared_ptr<const FDAlgebra<F>> A;
  size_t dim = 0;
  std::vector<Matrix<Elem>> act;

  const F& field() const { return A->field; }

  Matrix<Elem> act_element(const std::vector<Elem>& x) const {
    Matrix<Elem> m(dim, dim, field().zero());
    for (size_t i = 0; i < x.size(); ++i) {
      if (field().is_zero(x[i])) continue;
      for (size_t k = 0; k < dim * dim; ++k)
        m.a[k] = field().add(m.a[k], field().mul(x[i], act[i].a[k]));
    }
    return m;
  }

  // sampled structure-constant compatibility plus exact unity check
  void validate(size_t sample_pairs = 64, uint64_t seed = 7) const {
    const F& f = field();
    auto idm = act_element(A->unity);
    require(idm == identity(f, dim), errc::not_a_module, "unity does not act as identity");
    Rng rng(seed);
    size_t total = A->dim * A->dim;
    size_t checks = std::min(sample_pairs, total);
    for (size_t t = 0; t < checks; ++t) {
      size_t i = total <= sample_pairs ? t / A->dim : rng.below(A->dim);
      size_t j = total <= sample_pairs ? t % A->dim : rng.below(A->dim);
      auto lhs = mat_mul(f, act[i], act[j]);
      Matrix<Elem> rhs(dim, dim, f.zero());
      for (const auto& [k, c] : A->sc[i * A->dim + j])
        for (size_t idx = 0; idx < dim * dim; ++idx)
          rhs.a[idx] = f.add(rhs.a[idx], f.mul(c, act[k].a[idx]));
      require(lhs == rhs, errc::not_a_module, "action violates the structure constants");
    }
  }
};

template <typename F>
RepModule<F> regular_module(std::shared_ptr<const FDAlgebra<F>> A) {
  RepModule<F> m;
  m.A = A;
  m.dim = A->dim;
  for (size_t i = 0; i < A->dim; ++i) m.act.push_back(A->left_mult_matrix(A->basis_vec(i)));
  return m;
}

template <typename F>
RepModule<F> regular_module(const std::shared_ptr<FDAlgebra<F>>& A) {
  return regular_module(std::shared_ptr<const FDAlgebra<F>>(A));
}

// ---------------------------------------------------------------------------
// submodules: spin, restriction, quotient
// ---------------------------------------------------------------------------

// smallest action-invariant subspace containing the given vectors, as rref rows
template <typename F>
Subspace<F> spin(const RepModule<F>& M, const std::vector<std::vector<typename F::Elem>>& vecs) {
  const F& f = M.field();
  auto gens = M.A->generators_or_all();
  auto cur = make_span(f, M.dim, vecs);
  for (;;) {
    auto base = span_vectors(cur);
    std::vector<std::vector<typename F::Elem>> next = base;
    for (const auto& v : base)
      for (uint32_t gi : gens) next.push_back(mat_vec(f, M.act[gi], v));
    auto bigger = make_span(f, M.dim, next);
    if (bigger.dimension() == cur.dimension()) return cur;
    cur = std::move(bigger);
  }
}

template <typename F>
bool is_invariant_subspace(const RepModule<F>& M, const Subspace<F>& S) {
  const F& f = M.field();
  for (const auto& v : span_vectors(S))
    for (uint32_t gi : M.A->generators_or_all())
      if (!S.contains(f, mat_vec(f, M.act[gi], v))) return false;
  return true;
}

// restriction of the action to an invariant subspace (basis rows of S)
template <typename F>
RepModule<F> submodule(const RepModule<F>& M, const Subspace<F>& S) {
  const F& f = M.field();
  RepModule<F> r;
  r.A = M.A;
  r.dim = S.dimension();
  auto base = span_vectors(S);
  for (size_t bi = 0; bi < M.act.size(); ++bi) {
    Matrix<typename F::Elem> a(r.dim, r.dim, f.zero());
    for (size_t j = 0; j < r.dim; ++j) {
      auto w = mat_vec(f, M.act[bi], base[j]);
      auto co = coords_in_rref(f, S.basis, w);
      require(co.has_value(), errc::not_a_module, "subspace is not invariant");
      for (size_t i = 0; i < r.dim; ++i) a.at(i, j) = (*co)[i];
    }
    r.act.push_back(std::move(a));
  }
  return r;
}

// quotient of M by an invariant subspace, with the projection matrix
template <typename F>
std::pair<RepModule<F>, Matrix<typename F::Elem>> quotient_module(const RepModule<F>& M,
                                                                  const Subspace<F>& S) {
  const F& f = M.field();
  size_t n = M.dim, k = S.dimension(), q = n - k;
  std::vector<bool> is_pivot(n, false);
  for (size_t c : S.basis.pivot_cols) is_pivot[c] = true;
  std::vector<size_t> comp;
  for (size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) comp.push_back(c);
  auto project_vec = [&](std::vector<typename F::Elem> v) {
    for (size_t row = 0; row < k; ++row) {
      size_t pc = S.basis.pivot_cols[row];
      if (f.is_zero(v[pc])) continue;
      auto c = v[pc];
      for (size_t j = 0; j < n; ++j) v[j] = f.sub(v[j], f.mul(c, S.basis.rref.at(row, j)));
    }
    std::vector<typename F::Elem> out(q, f.zero());
    for (size_t i = 0; i < q; ++i) out[i] = v[comp[i]];
    return out;
  };
  Matrix<typename F::Elem> proj(q, n, f.zero());
  for (size_t j = 0; j < n; ++j) {
    std::vector<typename F::Elem> e(n, f.zero());
    e[j] = f.one();
    auto col = project_vec(std::move(e));
    for (size_t i = 0; i < q; ++i) proj.at(i, j) = col[i];
  }
  RepModule<F> r;
  r.A = M.A;
  r.dim = q;
  for (size_t bi = 0; bi < M.act.size(); ++bi) {
    Matrix<typename F::Elem> a(q, q, f.zero());
    for (size_t j = 0; j < q; ++j) {
      std::vector<typename F::Elem> e(n, f.zero());
      e[comp[j]] = f.one();
      auto col = project_vec(mat_vec(f, M.act[bi], e));
      for (size_t i = 0; i < q; ++i) a.at(i, j) = col[i];
    }
    r.act.push_back(std::move(a));
  }
  return {r, proj};
}

// ---------------------------------------------------------------------------
// homomorphisms and isomorphism tests
// ---------------------------------------------------------------------------

// basis of Hom_A(M, N) as dimN x dimM matrices X with act_N(g) X = X act_M(g)
template <typename F>
std::vector<Matrix<typename F::Elem>> hom_space(const RepModule<F>& M, const RepModule<F>& N) {
  const F& f = M.field();
  auto gens = M.A->generators_or_all();
  size_t rows_per = N.dim * M.dim;
  Matrix<typename F::Elem> sys(gens.size() * rows_per, N.dim * M.dim, f.zero());
  size_t rblock = 0;
  for (uint32_t gi : gens) {
    // (act_N X - X act_M)[i][j] = sum_k actN[i][k] X[k][j] - X[i][k] actM[k][j]
    for (size_t i = 0; i < N.dim; ++i)
      for (size_t j = 0; j < M.dim; ++j) {
        size_t row = rblock + i * M.dim + j;
        for (size_t k = 0; k < N.dim; ++k)
          sys.at(row, k * M.dim + j) = f.add(sys.at(row, k * M.dim + j), N.act[gi].at(i, k));
        for (size_t k = 0; k < M.dim; ++k)
          sys.at(row, i * M.dim + k) = f.sub(sys.at(row, i * M.dim + k), M.act[gi].at(k, j));
      }
    rblock += rows_per;
  }
  auto ker = kernel_basis(f, sys);
  std::vector<Matrix<typename F::Elem>> out;
  for (size_t c = 0; c < ker.cols; ++c) {
    Matrix<typename F::Elem> X(N.dim, M.dim, f.zero());
    for (size_t i = 0; i < N.dim; ++i)
      for (size_t j = 0; j < M.dim; ++j) X.at(i, j) = ker.at(i * M.dim + j, c);
    out.push_back(std::move(X));
  }
  return out;
}

// Schur route: two simples are isomorphic iff a nonzero hom exists
template <typename F>
bool iso_simple(const RepModule<F>& M, const RepModule<F>& N) {
  if (M.dim != N.dim) return false;
  return !hom_space(M, N).empty();
}

// general modules: search the hom space for an invertible element.  Small
// spaces over finite fields are swept exhaustively (decisive); otherwise a
// seeded random budget applies and exhaustion throws Inconclusive.
template <typename F>
bool iso_general(const RepModule<F>& M, const RepModule<F>& N, uint64_t seed = 99,
                 unsigned budget = 64) {
  if (M.dim != N.dim) return false;
  if (M.dim == 0) return true;
  const F& f = M.field();
  auto homs = hom_space(M, N);
  if (homs.empty()) return false;
  // necessary condition first: hom spaces both ways have equal dimension
  if (homs.size() != hom_space(N, M).size()) return false;
  for (const auto& X : homs)
    if (try_inverse(f, X).has_value()) return true;

  if constexpr (std::is_same_v<F, Fq>) {
    mpz_class combos = 1;
    for (size_t i = 0; i < homs.size() && combos <= 4096; ++i) combos *= static_cast<long>(f.q);
    if (combos <= 4096) {
      uint64_t total = 1;
      for (size_t i = 0; i < homs.size(); ++i) total *= f.q;
      for (uint64_t code = 1; code < total; ++code) {
        Matrix<typename F::Elem> X(N.dim, M.dim, f.zero());
        uint64_t t = code;
        for (const auto& H : homs) {
          auto c = f.from_index(t % f.q);
          t /= f.q;
          if (f.is_zero(c)) continue;
          for (size_t k = 0; k < X.a.size(); ++k) X.a[k] = f.add(X.a[k], f.mul(c, H.a[k]));
        }
        if (try_inverse(f, X).has_value()) return true;
      }
      return false;  // exhaustive sweep: decisively non-isomorphic
    }
  }
  Rng rng(seed);
  for (unsigned t = 0; t < budget; ++t) {
    Matrix<typename F::Elem> X(N.dim, M.dim, f.zero());
    for (const auto& H : homs) {
      auto c = f.random(rng);
      if (f.is_zero(c)) continue;
      for (size_t k = 0; k < X.a.size(); ++k) X.a[k] = f.add(X.a[k], f.mul(c, H.a[k]));
    }
    if (try_inverse(f, X).has_value()) return true;
  }
  raise(errc::inconclusive, "no invertible intertwiner found within the retry budget");
}

// ---------------------------------------------------------------------------
// chop: composition factors by the MeatAxe with Norton's irreducibility test
// ---------------------------------------------------------------------------

template <typename F>
struct ChopResult {
  std::vector<RepModule<F>> factors;  // with multiplicity, in discovery order
};

namespace meataxe_detail {

template <typename F>
RepModule<F> transposed_module(const RepModule<F>& M) {
  RepModule<F> t = M;
  for (auto& a : t.act) a = a.transposed();
  return t;
}

// spin under explicitly supplied action matrices (for the dual side)
template <typename F>
Subspace<F> spin_with(const F& f, const std::vector<Matrix<typename F::Elem>>& gens, size_t dim,
                      const std::vector<typename F::Elem>& v) {
  auto cur = make_span(f, dim, {v});
  for (;;) {
    auto base = span_vectors(cur);
    std::vector<std::vector<typename F::Elem>> next = base;
    for (const auto& x : base)
      for (const auto& g : gens) next.push_back(mat_vec(f, g, x));
    auto bigger = make_span(f, dim, next);
    if (bigger.dimension() == cur.dimension()) return cur;
    cur = std::move(bigger);
  }
}

}  // namespace meataxe_detail

// factor-field dispatch for charpoly factorization inside the MeatAxe
inline std::vector<std::pair<FqPoly, unsigned>> fq_like_factor(const Fq& f, const FqPoly& cp,
                                                               uint64_t seed) {
  return fq_factor(f, cp, seed);
}
inline std::vector<std::pair<PolyOf<Rationals>, unsigned>> fq_like_factor(
    const Rationals&, const PolyOf<Rationals>& cp, uint64_t) {
  return q_factor(cp);
}

// find a proper nonzero invariant subspace, or certify irreducibility
template <typename F>
std::optional<Subspace<F>> find_proper_submodule(const RepModule<F>& M, uint64_t seed,
                                                 unsigned budget = 64) {
  const F& f = M.field();
  require(M.dim > 0, errc::bad_input, "chopping the zero module");
  if (M.dim == 1) return std::nullopt;
  Rng rng(seed);
  auto gens = M.A->generators_or_all();
  std::vector<Matrix<typename F::Elem>> gen_mats, gen_mats_t;
  for (uint32_t gi : gens) {
    gen_mats.push_back(M.act[gi]);
    gen_mats_t.push_back(M.act[gi].transposed());
  }

  for (unsigned attempt = 0; attempt < budget; ++attempt) {
    // random element of the acting algebra
    std::vector<typename F::Elem> coords(M.A->dim, f.zero());
    size_t terms = 1 + rng.below(3);
    for (size_t t = 0; t < terms; ++t) coords[rng.below(M.A->dim)] = f.random(rng);
    auto theta = M.act_element(coords);
    auto cp = charpoly(f, theta);
    auto facs = fq_like_factor(f, cp, rng.next());
    for (const auto& fac : facs) {
      const auto& irr = fac.first;
      auto ftheta = polyops::eval_matrix(f, irr, theta);
      auto W = kernel_basis(f, ftheta);  // columns
      if (W.cols == 0) continue;
      // try kernel vectors as submodule generators
      for (size_t c = 0; c < W.cols; ++c) {
        std::vector<typename F::Elem> v(M.dim);
        for (size_t i = 0; i < M.dim; ++i) v[i] = W.at(i, c);
        auto S = spin(M, {v});
        if (S.dimension() < M.dim) return S;
      }
      bool good = (W.cols == irr.size() - 1);  // nullity equals deg f
      if (!good) continue;
      // Norton: check the dual side with one kernel vector of f(theta)^T
      auto Wt = kernel_basis(f, ftheta.transposed());
      require(Wt.cols == W.cols, errc::bad_input, "transpose nullity mismatch");
      std::vector<typename F::Elem> w(M.dim);
      for (size_t i = 0; i < M.dim; ++i) w[i] = Wt.at(i, 0);
      auto St = meataxe_detail::spin_with(f, gen_mats_t, M.dim, w);
      if (St.dimension() < M.dim) {
        // the annihilator of the dual submodule is a proper submodule
        auto vecs = span_vectors(St);
        Matrix<typename F::Elem> rows(vecs.size(), M.dim, f.zero());
        for (size_t i = 0; i < vecs.size(); ++i)
          for (size_t j = 0; j < M.dim; ++j) rows.at(i, j) = vecs[i][j];
        auto K = kernel_basis(f, rows);
        std::vector<std::vector<typename F::Elem>> kv;
        for (size_t c = 0; c < K.cols; ++c) {
          std::vector<typename F::Elem> v(M.dim);
          for (size_t i = 0; i < M.dim; ++i) v[i] = K.at(i, c);
          kv.push_back(std::move(v));
        }
        auto S = make_span(f, M.dim, kv);
        require(S.dimension() > 0 && S.dimension() < M.dim && is_invariant_subspace(M, S),
                errc::bad_input, "dual perp is not a proper submodule");
        return S;
      }
      return std::nullopt;  // irreducible, certified by Norton's criterion
    }
  }
  raise(errc::split_failure, "submodule search exhausted its retry budget");
}

template <typename F>
ChopResult<F> chop(const RepModule<F>& M, uint64_t seed = 2026) {
  ChopResult<F> out;
  if (M.dim == 0) return out;
  std::vector<std::pair<RepModule<F>, uint64_t>> stack{{M, seed}};
  while (!stack.empty()) {
    auto [cur, s] = stack.back();
    stack.pop_back();
    if (cur.dim == 0) continue;
    auto S = find_proper_submodule(cur, s);
    if (!S) {
      out.factors.push_back(cur);
      continue;
    }
    auto sub = submodule(cur, *S);
    auto quo = quotient_module(cur, *S).first;
    Rng d(s);
    stack.emplace_back(std::move(sub), d.child(1).next());
    stack.emplace_back(std::move(quo), d.child(2).next());
  }
  return out;
}

// composition vector against a catalog of pairwise non-isomorphic simples
template <typename F>
std::vector<unsigned> composition_vector(const ChopResult<F>& ch,
                                         const std::vector<RepModule<F>>& simples) {
  std::vector<unsigned> counts(simples.size(), 0);
  for (const auto& fac : ch.factors) {
    bool matched = false;
    for (size_t i = 0; i < simples.size(); ++i) {
      if (fac.dim == simples[i].dim && iso_simple(fac, simples[i])) {
        ++counts[i];
        matched = true;
        break;
      }
    }
    require(matched, errc::incomplete_catalog, "composition factor missing from the catalog");
  }
  return counts;
}

// chop with a Jordan-Holder cross check: an independent chop with a derived
// seed must produce the same multiset of factors
template <typename F>
std::vector<unsigned> chop_vector_verified(const RepModule<F>& M,
                                           const std::vector<RepModule<F>>& simples,
                                           uint64_t seed = 2026) {
  auto v1 = composition_vector(chop(M, seed), simples);
  auto v2 = composition_vector(chop(M, seed ^ 0x5deece66dULL), simples);
  require(v1 == v2, errc::bad_input, "independent chops disagree");
  return v1;
}

}  // namespace workbench
