#pragma once

#include <functional>
#include <string>
#include <vector>

#include "workbench/error.hpp"
#include "workbench/group.hpp"
#include "workbench/matrix.hpp"
#include "workbench/poly.hpp"
#include "workbench/qfactor.hpp"
#include "workbench/rings.hpp"

namespace workbench {

// finite-dimensional algebra by structure constants over a field context,
// stored sparsely per basis pair
template <typename F>
struct FDAlgebra {
  using Elem = typename F::Elem;
  using Vec = std::vector<Elem>;

  F field;
  size_t dim = 0;
  std::vector<std::vector<std::pair<uint32_t, Elem>>> sc;  // sc[i*dim+j]: b_i * b_j
  Vec unity;
  std::vector<std::string> labels;
  std::vector<uint32_t> gen_idx;  // multiplicative generators (with unity); may be all
  std::string name;

  Vec zero_vec() const { return Vec(dim, field.zero()); }

  Vec mul(const Vec& x, const Vec& y) const {
    Vec r = zero_vec();
    for (size_t i = 0; i < dim; ++i) {
      if (field.is_zero(x[i])) continue;
      for (size_t j = 0; j < dim; ++j) {
        if (field.is_zero(y[j])) continue;
        auto c = field.mul(x[i], y[j]);
        for (const auto& [k, v] : sc[i * dim + j]) r[k] = field.add(r[k], field.mul(c, v));
      }
    }
    return r;
  }

  Vec add(const Vec& x, const Vec& y) const {
    Vec r = x;
    for (size_t i = 0; i < dim; ++i) r[i] = field.add(r[i], y[i]);
    return r;
  }
  Vec sub(const Vec& x, const Vec& y) const {
    Vec r = x;
    for (size_t i = 0; i < dim; ++i) r[i] = field.sub(r[i], y[i]);
    return r;
  }
  Vec scale(const Elem& c, const Vec& x) const {
    Vec r = x;
    for (auto& v : r) v = field.mul(c, v);
    return r;
  }
  bool is_zero(const Vec& x) const {
    for (const auto& v : x)
      if (!field.is_zero(v)) return false;
    return true;
  }
  bool eq(const Vec& x, const Vec& y) const { return is_zero(sub(x, y)); }
  Vec basis_vec(size_t i) const {
    Vec r = zero_vec();
    r[i] = field.one();
    return r;
  }

  // L_x with L_x * coords(y) = coords(x*y)
  Matrix<Elem> left_mult_matrix(const Vec& x) const {
    Matrix<Elem> m(dim, dim, field.zero());
    for (size_t j = 0; j < dim; ++j) {
      auto col = mul(x, basis_vec(j));
      for (size_t i = 0; i < dim; ++i) m.at(i, j) = col[i];
    }
    return m;
  }
  Matrix<Elem> right_mult_matrix(const Vec& x) const {
    Matrix<Elem> m(dim, dim, field.zero());
    for (size_t j = 0; j < dim; ++j) {
      auto col = mul(basis_vec(j), x);
      for (size_t i = 0; i < dim; ++i) m.at(i, j) = col[i];
    }
    return m;
  }

  Elem trace_left_mult(const Vec& x) const {
    Elem t = field.zero();
    for (size_t j = 0; j < dim; ++j) {
      // coefficient of b_j in x * b_j
      for (size_t i = 0; i < dim; ++i) {
        if (field.is_zero(x[i])) continue;
        for (const auto& [k, v] : sc[i * dim + j])
          if (k == j) t = field.add(t, field.mul(x[i], v));
      }
    }
    return t;
  }

  void check_associativity() const {
    require(dim <= 64, errc::unsupported_order, "exhaustive associativity check capped at 64");
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < dim; ++j) {
        auto bij = mul(basis_vec(i), basis_vec(j));
        for (size_t k = 0; k < dim; ++k) {
          auto lhs = mul(bij, basis_vec(k));
          auto rhs = mul(basis_vec(i), mul(basis_vec(j), basis_vec(k)));
          require(eq(lhs, rhs), errc::bad_input, "structure constants are not associative");
        }
      }
    for (size_t i = 0; i < dim; ++i) {
      require(eq(mul(unity, basis_vec(i)), basis_vec(i)) && eq(mul(basis_vec(i), unity), basis_vec(i)),
              errc::bad_input, "unity does not act as identity");
    }
  }

  std::vector<uint32_t> generators_or_all() const {
    if (!gen_idx.empty()) return gen_idx;
    std::vector<uint32_t> all(dim);
    for (size_t i = 0; i < dim; ++i) all[i] = static_cast<uint32_t>(i);
    return all;
  }
};

// ---------------------------------------------------------------------------
// constructors
// ---------------------------------------------------------------------------

template <typename F>
FDAlgebra<F> group_algebra(const F& field, const FiniteGroup& g) {
  FDAlgebra<F> a;
  a.field = field;
  a.dim = g.n;
  a.sc.assign(g.n * g.n, {});
  for (size_t i = 0; i < g.n; ++i)
    for (size_t j = 0; j < g.n; ++j)
      a.sc[i * g.n + j].emplace_back(g.mul(static_cast<uint16_t>(i), static_cast<uint16_t>(j)),
                                     field.one());
  a.unity = a.zero_vec();
  a.unity[g.id] = field.one();
  for (size_t i = 0; i < g.n; ++i) a.labels.push_back("g" + std::to_string(i));
  for (uint16_t x : g.gens) a.gen_idx.push_back(x);
  a.name = field.name() + "[" + g.name + "]";
  a.check_associativity();
  return a;
}

// crossed product with trivial coefficient action: basis u_g, multiplication
// u_g u_h = tau(g,h) u_{gh}; the cocycle condition is checked exhaustively
template <typename F>
FDAlgebra<F> crossed_product(const F& field, const FiniteGroup& g,
                             const std::vector<typename F::Elem>& tau) {
  require(tau.size() == g.n * g.n, errc::bad_input, "cocycle table size mismatch");
  for (size_t x = 0; x < g.n; ++x) {
    require(field.eq(tau[g.id * g.n + x], field.one()) && field.eq(tau[x * g.n + g.id], field.one()),
            errc::cocycle_violation, "cocycle not normalized at the identity");
  }
  for (size_t x = 0; x < g.n; ++x)
    for (size_t y = 0; y < g.n; ++y) {
      require(field.is_unit(tau[x * g.n + y]), errc::cocycle_violation, "cocycle value not a unit");
      for (size_t z = 0; z < g.n; ++z) {
        auto gh = g.mul(static_cast<uint16_t>(x), static_cast<uint16_t>(y));
        auto hl = g.mul(static_cast<uint16_t>(y), static_cast<uint16_t>(z));
        auto lhs = field.mul(tau[x * g.n + y], tau[gh * g.n + z]);
        auto rhs = field.mul(tau[y * g.n + z], tau[x * g.n + hl]);
        require(field.eq(lhs, rhs), errc::cocycle_violation, "cocycle condition fails");
      }
    }
  FDAlgebra<F> a;
  a.field = field;
  a.dim = g.n;
  a.sc.assign(g.n * g.n, {});
  for (size_t i = 0; i < g.n; ++i)
    for (size_t j = 0; j < g.n; ++j)
      a.sc[i * g.n + j].emplace_back(g.mul(static_cast<uint16_t>(i), static_cast<uint16_t>(j)),
                                     tau[i * g.n + j]);
  a.unity = a.zero_vec();
  a.unity[g.id] = field.one();
  for (size_t i = 0; i < g.n; ++i) a.labels.push_back("u" + std::to_string(i));
  for (uint16_t x : g.gens) a.gen_idx.push_back(x);
  a.name = field.name() + "*" + g.name;
  a.check_associativity();
  return a;
}

// crossed product of F_q by G with G acting through Frobenius powers,
// flattened to an algebra over the prime field F_p (the action is only
// semilinear over F_q, so F_q does not stay central)
FDAlgebra<Fq> crossed_product_frobenius(const Fq& K, const FiniteGroup& g,
                                        const std::vector<unsigned>& frob_exp,
                                        const std::vector<Fq::Elem>& tau);

// ---------------------------------------------------------------------------
// subspace helpers: spans live as rref row bases over the base field
// ---------------------------------------------------------------------------

template <typename F>
struct Subspace {
  RrefResult<F> basis;  // rref rows spanning the subspace
  size_t ambient = 0;

  size_t dimension() const { return basis.rank; }
  bool contains(const F& field, const std::vector<typename F::Elem>& v) const {
    return coords_in_rref(field, basis, v).has_value();
  }
};

template <typename F>
Subspace<F> make_span(const F& field, size_t ambient,
                      const std::vector<std::vector<typename F::Elem>>& vectors) {
  Matrix<typename F::Elem> m(vectors.size(), ambient, field.zero());
  for (size_t i = 0; i < vectors.size(); ++i)
    for (size_t j = 0; j < ambient; ++j) m.at(i, j) = vectors[i][j];
  Subspace<F> s;
  s.ambient = ambient;
  s.basis = rref(field, std::move(m));
  s.basis.rref.rows = s.basis.rank;
  s.basis.rref.a.resize(s.basis.rank * ambient, field.zero());
  return s;
}

template <typename F>
std::vector<std::vector<typename F::Elem>> span_vectors(const Subspace<F>& s) {
  std::vector<std::vector<typename F::Elem>> out;
  for (size_t i = 0; i < s.basis.rank; ++i)
    out.emplace_back(s.basis.rref.a.begin() + i * s.ambient,
                     s.basis.rref.a.begin() + (i + 1) * s.ambient);
  return out;
}

// ---------------------------------------------------------------------------
// radical
// ---------------------------------------------------------------------------

template <typename F>
struct RadicalData {
  Subspace<F> basis;        // radical as a subspace of the algebra
  unsigned nilpotency = 1;  // smallest k with rad^k = 0
};

namespace detail {

// two-sided ideal closure of a set of elements
template <typename F>
Subspace<F> ideal_closure(const FDAlgebra<F>& A, std::vector<std::vector<typename F::Elem>> gens) {
  auto cur = make_span(A.field, A.dim, gens);
  for (;;) {
    auto vecs = span_vectors(cur);
    std::vector<std::vector<typename F::Elem>> next = vecs;
    for (const auto& v : vecs)
      for (size_t i = 0; i < A.dim; ++i) {
        next.push_back(A.mul(A.basis_vec(i), v));
        next.push_back(A.mul(v, A.basis_vec(i)));
      }
    auto bigger = make_span(A.field, A.dim, next);
    if (bigger.dimension() == cur.dimension()) return cur;
    cur = std::move(bigger);
  }
}

// product span U*V inside the algebra
template <typename F>
Subspace<F> span_product(const FDAlgebra<F>& A, const Subspace<F>& u, const Subspace<F>& v) {
  std::vector<std::vector<typename F::Elem>> prods;
  for (const auto& x : span_vectors(u))
    for (const auto& y : span_vectors(v)) prods.push_back(A.mul(x, y));
  return make_span(A.field, A.dim, prods);
}

}  // namespace detail

// nilpotency index of a subspace closed under multiplication; 0 if the chain
// does not reach zero within the dimension bound
template <typename F>
unsigned nilpotency_index(const FDAlgebra<F>& A, const Subspace<F>& s) {
  if (s.dimension() == 0) return 1;
  Subspace<F> power = s;
  for (unsigned k = 2; k <= static_cast<unsigned>(A.dim) + 1; ++k) {
    power = detail::span_product(A, power, s);
    if (power.dimension() == 0) return k;
  }
  return 0;
}

// radical over Q: kernel of the trace form (x, y) -> tr(L_{xy})
inline Subspace<Rationals> radical_subspace(const FDAlgebra<Rationals>& A) {
  const auto& Qf = A.field;
  Matrix<mpq_class> gram(A.dim, A.dim, Qf.zero());
  for (size_t i = 0; i < A.dim; ++i)
    for (size_t j = 0; j < A.dim; ++j)
      gram.at(i, j) = A.trace_left_mult(A.mul(A.basis_vec(i), A.basis_vec(j)));
  auto ker = kernel_basis(Qf, gram);
  std::vector<std::vector<mpq_class>> vecs;
  for (size_t c = 0; c < ker.cols; ++c) {
    std::vector<mpq_class> v(A.dim);
    for (size_t i = 0; i < A.dim; ++i) v[i] = ker.at(i, c);
    vecs.push_back(std::move(v));
  }
  return make_span(Qf, A.dim, vecs);
}

// radical over F_q: iterated trace-map chain with characteristic-polynomial
// coefficients c_{p^j}, solved as a linear system after a Frobenius
// substitution (the map x -> c_{p^j}(xy) is p^j-semilinear on the chain)
inline Subspace<Fq> radical_subspace(const FDAlgebra<Fq>& A) {
  const Fq& F = A.field;
  size_t n = A.dim;
  // chain starts at the full algebra
  std::vector<std::vector<Fq::Elem>> cur_basis;
  for (size_t i = 0; i < n; ++i) cur_basis.push_back(A.basis_vec(i));

  unsigned l = 0;
  while (pow_u64(F.p, l + 1) <= n) ++l;

  for (unsigned j = 0; j <= l; ++j) {
    if (cur_basis.empty()) break;
    uint64_t pj = pow_u64(F.p, j);
    size_t t = cur_basis.size();
    // rows: one per y in the current basis; cols: unknowns eta_i
    Matrix<Fq::Elem> sys(t, t, F.zero());
    // cache left-mult matrices of the current basis
    std::vector<Matrix<Fq::Elem>> lm;
    lm.reserve(t);
    for (const auto& x : cur_basis) lm.push_back(A.left_mult_matrix(x));
    for (size_t yi = 0; yi < t; ++yi) {
      auto ly = A.left_mult_matrix(cur_basis[yi]);
      for (size_t xi = 0; xi < t; ++xi) {
        auto prod = mat_mul(F, lm[xi], ly);
        auto cp = charpoly(F, prod);
        // coefficient of lambda^(n - p^j)
        Fq::Elem c = (pj <= n) ? cp[n - pj] : F.zero();
        sys.at(yi, xi) = c;
      }
    }
    auto ker = kernel_basis(F, sys);
    std::vector<std::vector<Fq::Elem>> next;
    for (size_t c = 0; c < ker.cols; ++c) {
      std::vector<Fq::Elem> v(n, F.zero());
      for (size_t i = 0; i < t; ++i) {
        // the system was solved in eta = xi^(p^j); undo the Frobenius power
        auto xi_coef = (j % F.s == 0) ? ker.at(i, c) : F.frobenius_inv(ker.at(i, c), j);
        for (size_t d = 0; d < n; ++d) v[d] = F.add(v[d], F.mul(xi_coef, cur_basis[i][d]));
      }
      next.push_back(std::move(v));
    }
    auto sp = make_span(F, n, next);
    cur_basis = span_vectors(sp);
  }
  return make_span(F, n, cur_basis);
}

template <typename F>
RadicalData<F> radical(const FDAlgebra<F>& A) {
  RadicalData<F> rd;
  rd.basis = radical_subspace(A);
  if (rd.basis.dimension() == 0) {
    rd.nilpotency = 1;
    return rd;
  }
  // verify two-sidedness and nilpotency
  auto closure = detail::ideal_closure(A, span_vectors(rd.basis));
  require(closure.dimension() == rd.basis.dimension(), errc::bad_input,
          "computed radical is not a two-sided ideal");
  rd.nilpotency = nilpotency_index(A, rd.basis);
  require(rd.nilpotency != 0, errc::bad_input, "computed radical is not nilpotent");
  return rd;
}

// verification-only route for base fields without a radical algorithm: the
// caller supplies generators of a candidate ideal; ideal-ness and nilpotency
// are certified here, semisimplicity of the quotient is the caller's check
template <typename F>
RadicalData<F> radical_from_candidate(const FDAlgebra<F>& A,
                                      const std::vector<std::vector<typename F::Elem>>& gens) {
  RadicalData<F> rd;
  rd.basis = detail::ideal_closure(A, gens);
  rd.nilpotency = nilpotency_index(A, rd.basis);
  require(rd.nilpotency != 0, errc::radical_algorithm_unavailable,
          "candidate ideal is not nilpotent");
  return rd;
}

// ---------------------------------------------------------------------------
// quotient algebra A / I for a two-sided ideal I, with the projection data
// ---------------------------------------------------------------------------

template <typename F>
struct QuotientAlgebra {
  FDAlgebra<F> algebra;
  Matrix<typename F::Elem> project;  // (dim A/I) x (dim A) coordinate projection
  Matrix<typename F::Elem> lift;     // (dim A) x (dim A/I) section
};

template <typename F>
QuotientAlgebra<F> quotient_algebra(const FDAlgebra<F>& A, const Subspace<F>& ideal) {
  const F& field = A.field;
  size_t n = A.dim, r = ideal.dimension();
  size_t q = n - r;
  // complement basis: unit vectors at non-pivot columns of the ideal rref
  std::vector<bool> is_pivot(n, false);
  for (size_t c : ideal.basis.pivot_cols) is_pivot[c] = true;
  std::vector<size_t> comp;
  for (size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) comp.push_back(c);

  // projection: reduce a vector by the ideal rref, then read complement coords
  auto project_vec = [&](const std::vector<typename F::Elem>& v) {
    auto rem = v;
    for (size_t row = 0; row < ideal.basis.rank; ++row) {
      size_t pc = ideal.basis.pivot_cols[row];
      if (field.is_zero(rem[pc])) continue;
      auto f = rem[pc];
      for (size_t jj = 0; jj < n; ++jj)
        rem[jj] = field.sub(rem[jj], field.mul(f, ideal.basis.rref.at(row, jj)));
    }
    std::vector<typename F::Elem> out(q, field.zero());
    for (size_t k = 0; k < q; ++k) out[k] = rem[comp[k]];
    return out;
  };

  QuotientAlgebra<F> Qa;
  Qa.project = Matrix<typename F::Elem>(q, n, field.zero());
  for (size_t j = 0; j < n; ++j) {
    auto col = project_vec(A.basis_vec(j));
    for (size_t i = 0; i < q; ++i) Qa.project.at(i, j) = col[i];
  }
  Qa.lift = Matrix<typename F::Elem>(n, q, field.zero());
  for (size_t k = 0; k < q; ++k) Qa.lift.at(comp[k], k) = field.one();

  FDAlgebra<F>& B = Qa.algebra;
  B.field = field;
  B.dim = q;
  B.sc.assign(q * q, {});
  for (size_t i = 0; i < q; ++i)
    for (size_t j = 0; j < q; ++j) {
      auto prod = project_vec(A.mul(A.basis_vec(comp[i]), A.basis_vec(comp[j])));
      for (size_t k = 0; k < q; ++k)
        if (!field.is_zero(prod[k])) B.sc[i * q + j].emplace_back(static_cast<uint32_t>(k), prod[k]);
    }
  B.unity = project_vec(A.unity);
  for (size_t k = 0; k < q; ++k) B.labels.push_back("q" + std::to_string(k));
  B.name = A.name + "/I";
  if (q <= 64) B.check_associativity();
  return Qa;
}

// corner algebra eAe with unity e; returns the new algebra and the inclusion
// (columns are the eAe basis in A coordinates)
template <typename F>
std::pair<FDAlgebra<F>, Matrix<typename F::Elem>> corner_algebra(
    const FDAlgebra<F>& A, const std::vector<typename F::Elem>& e) {
  const F& field = A.field;
  std::vector<std::vector<typename F::Elem>> vecs;
  for (size_t i = 0; i < A.dim; ++i) vecs.push_back(A.mul(A.mul(e, A.basis_vec(i)), e));
  auto sp = make_span(field, A.dim, vecs);
  auto basis = span_vectors(sp);
  size_t q = basis.size();
  Matrix<typename F::Elem> incl(A.dim, q, field.zero());
  for (size_t k = 0; k < q; ++k)
    for (size_t i = 0; i < A.dim; ++i) incl.at(i, k) = basis[k][i];

  FDAlgebra<F> B;
  B.field = field;
  B.dim = q;
  B.sc.assign(q * q, {});
  for (size_t i = 0; i < q; ++i)
    for (size_t j = 0; j < q; ++j) {
      auto prod = A.mul(basis[i], basis[j]);
      auto co = coords_in_rref(field, sp.basis, prod);
      require(co.has_value(), errc::bad_input, "corner algebra not closed");
      for (size_t k = 0; k < q; ++k)
        if (!field.is_zero((*co)[k])) B.sc[i * q + j].emplace_back(static_cast<uint32_t>(k), (*co)[k]);
    }
  auto eco = coords_in_rref(field, sp.basis, e);
  require(eco.has_value(), errc::bad_input, "unity missing from corner algebra");
  B.unity = *eco;
  for (size_t k = 0; k < q; ++k) B.labels.push_back("c" + std::to_string(k));
  B.name = A.name + ".corner";
  return {B, incl};
}

// center as a subspace: solutions of z b_i = b_i z for all i
template <typename F>
Subspace<F> center_subspace(const FDAlgebra<F>& A) {
  const F& field = A.field;
  size_t n = A.dim;
  Matrix<typename F::Elem> sys(n * n, n, field.zero());
  for (size_t i = 0; i < n; ++i) {
    auto bi = A.basis_vec(i);
    for (size_t j = 0; j < n; ++j) {
      auto bj = A.basis_vec(j);
      auto comm = A.sub(A.mul(bj, bi), A.mul(bi, bj));
      for (size_t r = 0; r < n; ++r) sys.at(i * n + r, j) = comm[r];
    }
  }
  auto ker = kernel_basis(field, sys);
  std::vector<std::vector<typename F::Elem>> vecs;
  for (size_t c = 0; c < ker.cols; ++c) {
    std::vector<typename F::Elem> v(n);
    for (size_t j = 0; j < n; ++j) v[j] = ker.at(j, c);
    vecs.push_back(std::move(v));
  }
  return make_span(field, n, vecs);
}

// ---------------------------------------------------------------------------
// idempotents
// ---------------------------------------------------------------------------

// Newton refinement e <- 3e^2 - 2e^3 from an approximate idempotent; the
// iteration budget follows the ambient precision (caller-supplied)
template <typename MulFn, typename EqFn, typename AddFn, typename ScaleFn, typename V>
V newton_idempotent(const V& start, MulFn mul, AddFn add, ScaleFn scale_by_int, EqFn eq,
                    unsigned budget) {
  V e = start;
  for (unsigned it = 0; it < budget; ++it) {
    auto e2 = mul(e, e);
    if (eq(e2, e)) return e;
    auto e3 = mul(e2, e);
    e = add(scale_by_int(3, e2), scale_by_int(-2, e3));
  }
  auto e2 = mul(e, e);
  require(eq(e2, e), errc::lift_diverged, "idempotent refinement failed to stabilize");
  return e;
}

// split an idempotent e of a SEMISIMPLE algebra into primitive orthogonal
// idempotents; deterministic candidate sweep, seeded random fallback.
// Over F_q the search is exhaustive for small corners, so primitivity is
// certified; over Q exhausted budgets declare primitivity (division blocks).
template <typename F>
std::vector<std::vector<typename F::Elem>> primitive_idempotents(const FDAlgebra<F>& S,
                                                                 uint64_t seed = 12345);

// implementation detail shared by the Fq and Q instantiations
namespace detail {

template <typename F, typename FactorFn>
std::optional<std::vector<typename F::Elem>> split_once(const FDAlgebra<F>& S,
                                                        const std::vector<typename F::Elem>& e,
                                                        FactorFn factor, Rng& rng,
                                                        unsigned random_budget,
                                                        uint64_t exhaustive_cap);

}  // namespace detail

}  // namespace workbench

#include "workbench/fdalgebra_impl.hpp"
