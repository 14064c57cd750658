#include "workbench/ktheory.hpp"
#include "workbench/smith.hpp"

#include <algorithm>
#include <numeric>

namespace workbench {

IntMat int_mat_mul(const IntMat& a, const IntMat& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMat r(n, std::vector<long>(m, 0));
  for (size_t i = 0; i < n; ++i) {
    require(a[i].size() == k, errc::bad_input, "ragged integer matrix");
    for (size_t t = 0; t < k; ++t)
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
  }
  return r;
}

IntMat int_mat_transpose(const IntMat& a) {
  size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
  IntMat r(m, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
  return r;
}

mpz_class int_mat_det(const IntMat& a) {
  size_t n = a.size();
  Rationals Q;
  Matrix<mpq_class> m(n, n, Q.zero());
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m.at(i, j) = mpq_class(a[i][j]);
  // Gaussian elimination with determinant tracking
  mpq_class det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t r = c; r < n; ++r)
      if (m.at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv == n) return 0;
    if (piv != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
      det = -det;
    }
    det *= m.at(c, c);
    mpq_class inv = 1 / m.at(c, c);
    for (size_t j = 0; j < n; ++j) m.at(c, j) *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == c || m.at(r, c) == 0) continue;
      mpq_class f = m.at(r, c);
      for (size_t j = 0; j < n; ++j) m.at(r, j) -= f * m.at(c, j);
    }
  }
  require(det.get_den() == 1, errc::bad_input, "integer determinant is fractional");
  return det.get_num();
}

bool is_identity(const IntMat& a) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a.size()) return false;
    for (size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != (i == j ? 1 : 0)) return false;
  }
  return true;
}

CellContext build_cell(const FiniteGroup& g, unsigned long p, unsigned precision_a,
                       uint64_t seed) {
  CellContext cell;
  cell.g = g;
  cell.p = p;
  cell.precision_a = precision_a;
  cell.ord = build_q_catalog(g, seed ^ 0x0ddba11ULL);
  cell.mod = build_mod_catalog(g, p, seed ^ 0x5eed);
  cell.proxy = std::make_shared<ZpaGroupRing>(p, precision_a, g);
  cell.lifted = lift_idempotents(*cell.proxy, seed ^ 0x11f7);
  return cell;
}

// ---------------------------------------------------------------------------
// lattices
// ---------------------------------------------------------------------------

namespace {

const Rationals kQ;

// R-basis of the R-span of the given columns (echelon over the DVR)
std::vector<std::vector<mpq_class>> dvr_echelon(const PLocal& R,
                                                std::vector<std::vector<mpq_class>> cols) {
  std::vector<std::vector<mpq_class>> basis;
  if (cols.empty()) return basis;
  size_t n = cols[0].size();
  for (size_t r = 0; r < n; ++r) {
    long best = kValInf;
    size_t bi = cols.size();
    for (size_t i = 0; i < cols.size(); ++i) {
      if (cols[i][r] == 0) continue;
      long v = R.val(cols[i][r]);
      if (v < best) {
        best = v;
        bi = i;
      }
    }
    if (bi == cols.size()) continue;
    auto c = cols[bi];
    cols.erase(cols.begin() + static_cast<long>(bi));
    for (auto& d : cols) {
      if (d[r] == 0) continue;
      mpq_class q = d[r] / c[r];
      for (size_t k = 0; k < n; ++k) d[k] -= q * c[k];
    }
    basis.push_back(std::move(c));
  }
  return basis;
}

// does v lie in the R-span of the echelon basis?
bool in_lattice(const PLocal& R, const std::vector<std::vector<mpq_class>>& basis,
                std::vector<mpq_class> v) {
  // basis columns have strictly increasing pivot rows by construction
  for (const auto& b : basis) {
    size_t r = 0;
    while (r < b.size() && b[r] == 0) ++r;
    if (r == b.size()) continue;
    if (v[r] == 0) continue;
    mpq_class q = v[r] / b[r];
    if (!R.in_ring(q)) return false;
    for (size_t k = 0; k < v.size(); ++k) v[k] -= q * b[k];
  }
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

Matrix<mpq_class> full_lattice_basis(const PLocal& R, const RepModule<Rationals>& V,
                                     const FiniteGroup& g,
                                     const std::vector<std::vector<mpq_class>>& start_cols) {
  auto basis = dvr_echelon(R, start_cols);
  require(basis.size() == V.dim, errc::bad_input, "starting columns do not span the module");
  std::vector<uint16_t> gens = g.gens;
  for (;;) {
    std::vector<std::vector<mpq_class>> next = basis;
    bool grew = false;
    for (const auto& b : basis)
      for (uint16_t gg : gens) {
        auto w = mat_vec(kQ, V.act[gg], b);
        if (!in_lattice(R, basis, w)) {
          next.push_back(w);
          grew = true;
        }
      }
    if (!grew) break;
    basis = dvr_echelon(R, next);
  }
  Matrix<mpq_class> B(V.dim, V.dim, kQ.zero());
  for (size_t j = 0; j < basis.size(); ++j)
    for (size_t i = 0; i < V.dim; ++i) B.at(i, j) = basis[j][i];
  return B;
}

RepModule<Fq> reduce_lattice(const CellContext& cell, const RepModule<Rationals>& V,
                             const Matrix<mpq_class>& lattice) {
  PLocal R(cell.p);
  const Fq& F = cell.mod.field();
  auto Binv = inverse(kQ, lattice);
  RepModule<Fq> red;
  red.A = cell.mod.omega;
  red.dim = V.dim;
  for (uint16_t gg = 0; gg < cell.g.n; ++gg) {
    auto C = mat_mul(kQ, mat_mul(kQ, Binv, V.act[gg]), lattice);
    Matrix<Fq::Elem> m(V.dim, V.dim, F.zero());
    for (size_t i = 0; i < V.dim; ++i)
      for (size_t j = 0; j < V.dim; ++j) {
        require(R.in_ring(C.at(i, j)), errc::not_a_module, "lattice is not stable under the action");
        m.at(i, j) = F.from_int(static_cast<long>(R.reduce_mod_p(C.at(i, j))));
      }
    red.act.push_back(std::move(m));
  }
  red.validate(16);
  return red;
}

std::vector<unsigned> decomposition_vector(const CellContext& cell,
                                           const RepModule<Rationals>& V, uint64_t seed) {
  PLocal R(cell.p);
  std::vector<std::vector<mpq_class>> std_basis;
  for (size_t i = 0; i < V.dim; ++i) {
    std::vector<mpq_class> e(V.dim, 0);
    e[i] = 1;
    std_basis.push_back(std::move(e));
  }
  auto B = full_lattice_basis(R, V, cell.g, std_basis);
  auto red = reduce_lattice(cell, V, B);
  return chop_vector_verified(red, cell.mod.simples, seed);
}

bool lattice_independence_check(const CellContext& cell, const RepModule<Rationals>& V,
                                unsigned trials, uint64_t seed) {
  require(trials >= 2, errc::bad_input, "need at least two lattice trials");
  PLocal R(cell.p);
  Rng rng(seed);
  std::vector<std::vector<mpq_class>> std_basis;
  for (size_t i = 0; i < V.dim; ++i) {
    std::vector<mpq_class> e(V.dim, 0);
    e[i] = 1;
    std_basis.push_back(std::move(e));
  }
  auto base = full_lattice_basis(R, V, cell.g, std_basis);
  auto reference = chop_vector_verified(reduce_lattice(cell, V, base), cell.mod.simples, seed);

  auto base_cols = [&]() {
    std::vector<std::vector<mpq_class>> cols;
    for (size_t j = 0; j < V.dim; ++j) {
      std::vector<mpq_class> c(V.dim);
      for (size_t i = 0; i < V.dim; ++i) c[i] = base.at(i, j);
      cols.push_back(std::move(c));
    }
    return cols;
  }();

  for (unsigned t = 0; t < trials; ++t) {
    std::vector<std::vector<mpq_class>> cols;
    switch (rng.below(3)) {
      case 0: {
        // unimodular change of basis: same lattice
        for (size_t j = 0; j < V.dim; ++j) {
          auto c = base_cols[j];
          for (size_t k = 0; k < V.dim; ++k) {
            if (k == j) continue;
            long f = static_cast<long>(rng.below(2 * cell.p + 1)) - static_cast<long>(cell.p);
            for (size_t i = 0; i < V.dim; ++i) c[i] += mpq_class(f) * base_cols[k][i];
          }
          cols.push_back(std::move(c));
        }
        break;
      }
      case 1: {
        // sublattice generated by p L and a random vector of L
        std::vector<mpq_class> w(V.dim, 0);
        for (size_t j = 0; j < V.dim; ++j) {
          long f = static_cast<long>(rng.below(2 * cell.p + 1)) - static_cast<long>(cell.p);
          for (size_t i = 0; i < V.dim; ++i) w[i] += mpq_class(f) * base_cols[j][i];
        }
        for (const auto& c : base_cols) {
          auto pc = c;
          for (auto& x : pc) x *= static_cast<long>(cell.p);
          cols.push_back(std::move(pc));
        }
        cols.push_back(std::move(w));
        break;
      }
      default: {
        // rescale one basis direction by p before re-spinning
        size_t pick = rng.below(V.dim);
        for (size_t j = 0; j < V.dim; ++j) {
          auto c = base_cols[j];
          if (j == pick)
            for (auto& x : c) x *= static_cast<long>(cell.p);
          cols.push_back(std::move(c));
        }
        break;
      }
    }
    auto L = full_lattice_basis(R, V, cell.g, cols);
    auto vec = chop_vector_verified(reduce_lattice(cell, V, L), cell.mod.simples, rng.next());
    if (vec != reference) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// b and e
// ---------------------------------------------------------------------------

namespace {

// module structure on the image of right multiplication by an idempotent
// matrix with entries in the modular group algebra
RepModule<Fq> reduction_image_module(const CellContext& cell, size_t rank,
                                     const std::vector<std::vector<Fq::Elem>>& entries) {
  const Fq& F = cell.mod.field();
  const auto& A = *cell.mod.omega;
  size_t n = A.dim, N = rank * n;
  // right multiplication by E as an N x N matrix over F
  Matrix<Fq::Elem> ME(N, N, F.zero());
  for (size_t m = 0; m < rank; ++m)
    for (uint16_t h = 0; h < n; ++h) {
      size_t col = m * n + h;
      // e_(m,h) * E has slot j equal to h * E[m][j]
      for (size_t j = 0; j < rank; ++j) {
        auto prod = A.mul(A.basis_vec(h), entries[m * rank + j]);
        for (size_t i = 0; i < n; ++i) ME.at(j * n + i, col) = prod[i];
      }
    }
  // image basis = column space
  std::vector<std::vector<Fq::Elem>> cols;
  for (size_t c = 0; c < N; ++c) {
    std::vector<Fq::Elem> v(N);
    for (size_t i = 0; i < N; ++i) v[i] = ME.at(i, c);
    cols.push_back(std::move(v));
  }
  auto sp = make_span(F, N, cols);
  // ambient module: free of rank `rank` with the left regular action per slot
  RepModule<Fq> ambient;
  ambient.A = cell.mod.omega;
  ambient.dim = N;
  for (size_t b = 0; b < n; ++b) {
    Matrix<Fq::Elem> act(N, N, F.zero());
    auto L = A.left_mult_matrix(A.basis_vec(b));
    for (size_t m = 0; m < rank; ++m)
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) act.at(m * n + i, m * n + j) = L.at(i, j);
    ambient.act.push_back(std::move(act));
  }
  return submodule(ambient, sp);
}

std::vector<unsigned> b_vector_from_entries(const CellContext& cell, size_t rank,
                                            const std::vector<std::vector<Fq::Elem>>& entries) {
  auto mod = reduction_image_module(cell, rank, entries);
  auto mult = pim_multiplicities(cell.mod, mod);
  size_t total = 0;
  for (size_t i = 0; i < mult.size(); ++i) total += mult[i] * cell.mod.pims[i].dim;
  require(total == mod.dim, errc::not_a_module, "reduction is not projective");
  return mult;
}

std::vector<long> e_vector_from_character(const CellContext& cell, const std::vector<long>& chi) {
  // multiplicity of V is <chi, chi_V> / <chi_V, chi_V> with the integral
  // group pairing <a, b> = (1/|G|) sum_g a(g) b(g^{-1})
  const auto& g = cell.g;
  auto pair = [&](const std::vector<long>& x, const std::vector<long>& y) {
    mpq_class acc = 0;
    for (uint16_t e = 0; e < g.n; ++e) acc += mpq_class(x[e]) * mpq_class(y[g.invert(e)]);
    return mpq_class(acc / static_cast<long>(g.n));
  };
  std::vector<long> out;
  std::vector<long> recon(g.n, 0);
  for (const auto& s : cell.ord.simples) {
    auto num = pair(chi, s.character);
    auto den = pair(s.character, s.character);
    mpq_class m = num / den;
    require(m.get_den() == 1 && m >= 0, errc::not_a_module,
            "character does not decompose integrally");
    long mi = static_cast<long>(mpz_get_si(m.get_num().get_mpz_t()));
    out.push_back(mi);
    for (uint16_t e = 0; e < g.n; ++e) recon[e] += mi * s.character[e];
  }
  require(recon == chi, errc::not_a_module, "character reconstruction failed");
  return out;
}

}  // namespace

K0Class b_map(const CellContext& cell, const ProjectiveRational& P) {
  PLocal R(cell.p);
  const Fq& F = cell.mod.field();
  std::vector<std::vector<Fq::Elem>> entries;
  for (const auto& entry : P.entries) {
    std::vector<Fq::Elem> red(entry.size());
    for (size_t i = 0; i < entry.size(); ++i) {
      require(R.in_ring(entry[i]), errc::negative_valuation,
              "projective witness is not p-integral");
      red[i] = F.from_int(static_cast<long>(R.reduce_mod_p(entry[i])));
    }
    entries.push_back(std::move(red));
  }
  auto mult = b_vector_from_entries(cell, P.rank, entries);
  K0Class k;
  k.basis = cell.mod_basis_id();
  for (unsigned m : mult) k.v.push_back(static_cast<long>(m));
  return k;
}

K0Class b_map(const CellContext& cell, const ZpaProjective& P) {
  const Fq& F = cell.mod.field();
  std::vector<std::vector<Fq::Elem>> entries;
  for (const auto& entry : P.E) {
    auto red = P.R->reduce_mod_p(entry);
    std::vector<Fq::Elem> e(red.size());
    for (size_t i = 0; i < red.size(); ++i) e[i] = F.from_int(static_cast<long>(red[i]));
    entries.push_back(std::move(e));
  }
  auto mult = b_vector_from_entries(cell, P.rank, entries);
  K0Class k;
  k.basis = cell.mod_basis_id();
  for (unsigned m : mult) k.v.push_back(static_cast<long>(m));
  return k;
}

G0Class e_map(const CellContext& cell, const ProjectiveRational& P) {
  // rank of each central idempotent on the image of E, flattened over Q
  const auto& A = *cell.ord.QG;
  size_t n = A.dim, N = P.rank * n;
  Matrix<mpq_class> ME(N, N, kQ.zero());
  for (size_t m = 0; m < P.rank; ++m)
    for (uint16_t h = 0; h < n; ++h) {
      size_t col = m * n + h;
      for (size_t j = 0; j < P.rank; ++j) {
        auto prod = A.mul(A.basis_vec(h), P.at(m, j));
        for (size_t i = 0; i < n; ++i) ME.at(j * n + i, col) = prod[i];
      }
    }
  std::vector<std::vector<mpq_class>> cols;
  for (size_t c = 0; c < N; ++c) {
    std::vector<mpq_class> v(N);
    for (size_t i = 0; i < N; ++i) v[i] = ME.at(i, c);
    cols.push_back(std::move(v));
  }
  auto image = make_span(kQ, N, cols);
  auto img_vecs = span_vectors(image);

  G0Class out;
  out.basis = cell.ord_basis_id();
  size_t covered = 0;
  for (const auto& s : cell.ord.simples) {
    auto L = A.left_mult_matrix(s.central_idem);
    // apply blockwise to each image vector, then measure the rank
    Matrix<mpq_class> acted(img_vecs.size(), N, kQ.zero());
    for (size_t r = 0; r < img_vecs.size(); ++r)
      for (size_t m = 0; m < P.rank; ++m) {
        std::vector<mpq_class> slot(n);
        for (size_t i = 0; i < n; ++i) slot[i] = img_vecs[r][m * n + i];
        auto w = mat_vec(kQ, L, slot);
        for (size_t i = 0; i < n; ++i) acted.at(r, m * n + i) = w[i];
      }
    size_t rk = mat_rank(kQ, acted);
    require(rk % s.module.dim == 0, errc::not_a_module, "central rank not divisible");
    out.v.push_back(static_cast<long>(rk / s.module.dim));
    covered += rk;
  }
  require(covered == image.dimension(), errc::not_a_module, "generic fiber decomposition failed");
  return out;
}

G0Class e_map(const CellContext& cell, const ZpaProjective& P) {
  auto chi = projective_character(P);
  G0Class out;
  out.basis = cell.ord_basis_id();
  out.v = e_vector_from_character(cell, chi);
  return out;
}

// ---------------------------------------------------------------------------
// square check
// ---------------------------------------------------------------------------

SquareCheckResult square_check(const CellContext& cell, uint64_t seed) {
  SquareCheckResult res;
  const size_t s = cell.mod.size();

  // Cartan matrix: C[i][j] = multiplicity of S_i in P_j
  res.C.assign(s, std::vector<long>(s, 0));
  for (size_t j = 0; j < s; ++j) {
    auto col = chop_vector_verified(cell.mod.pims[j], cell.mod.simples, seed ^ (j * 77));
    for (size_t i = 0; i < s; ++i) res.C[i][j] = static_cast<long>(col[i]);
  }

  // decomposition matrix: row per ordinary simple
  res.D.assign(cell.ord.size(), std::vector<long>(s, 0));
  for (size_t v = 0; v < cell.ord.size(); ++v) {
    auto row = decomposition_vector(cell, cell.ord.simples[v].module, seed ^ (v * 131));
    for (size_t i = 0; i < s; ++i) res.D[v][i] = static_cast<long>(row[i]);
    bool nonzero = false;
    for (long x : res.D[v]) nonzero |= (x != 0);
    require(nonzero, errc::square_violation, "decomposition matrix has a zero row");
  }

  // proxy rows: b and e of each lifted primitive idempotent
  size_t k = cell.lifted.idem.size();
  res.B.assign(k, std::vector<long>(s, 0));
  res.E.assign(k, std::vector<long>(cell.ord.size(), 0));
  for (size_t i = 0; i < k; ++i) {
    std::vector<unsigned> one(k, 0);
    one[i] = 1;
    auto P = block_projective(cell.proxy, cell.lifted, one);
    res.B[i] = b_map(cell, P).v;
    res.E[i] = e_map(cell, P).v;
  }

  res.de_eq_cb = int_mat_mul(res.E, res.D) == int_mat_mul(res.B, int_mat_transpose(res.C));
  res.ord_split = cell.ord.split;
  res.splitting_degree = cell.mod.s;
  if (cell.ord.split) {
    res.dtd_eq_c = int_mat_mul(int_mat_transpose(res.D), res.D) == res.C;
    res.e_eq_dt = (res.E == int_mat_mul(res.B, int_mat_transpose(res.D)));
  }

  res.detC = int_mat_det(res.C);
  mpz_class d = res.detC < 0 ? mpz_class(-res.detC) : res.detC;
  res.det_p_exponent = 0;
  res.det_is_p_power = d != 0;
  while (d % static_cast<long>(cell.p) == 0) {
    d /= static_cast<long>(cell.p);
    ++res.det_p_exponent;
  }
  if (d != 1) res.det_is_p_power = false;

  res.c_identity_expected = (cell.g.n % cell.p != 0);
  res.c_is_identity = is_identity(res.C);
  res.pass = res.de_eq_cb && res.det_is_p_power &&
             (!res.c_identity_expected || res.c_is_identity) &&
             (!res.dtd_eq_c.has_value() || *res.dtd_eq_c) &&
             (!res.e_eq_dt.has_value() || *res.e_eq_dt);
  return res;
}

// ---------------------------------------------------------------------------
// Swan consistency
// ---------------------------------------------------------------------------

RationalPool rational_projective_pool(const CellContext& cell) {
  RationalPool pool;
  const auto& A = *cell.ord.QG;
  PLocal R(cell.p);

  auto add = [&](const std::string& name, std::vector<mpq_class> idem) {
    // idempotent, nonzero, p-integral
    bool zero = true, integral = true;
    for (const auto& c : idem) {
      if (c != 0) zero = false;
      if (!R.in_ring(c)) integral = false;
    }
    if (zero || !integral) return;
    require(A.eq(A.mul(idem, idem), idem), errc::bad_input, "pool element is not idempotent");
    ProjectiveRational P;
    P.QG = cell.ord.QG;
    P.rank = 1;
    P.entries = {idem};
    P.provenance = name;
    pool.names.push_back(name);
    pool.projectives.push_back(std::move(P));
  };

  add("free", A.unity);
  // averaging idempotents of cyclic p'-subgroups, and their complements
  auto subs = cell.g.cyclic_subgroups();
  for (const auto& H : subs) {
    if (H.size() == 1 || H.size() % cell.p == 0) continue;
    std::vector<mpq_class> e(A.dim, 0);
    for (uint16_t h : H) e[h] = mpq_class(1, static_cast<long>(H.size()));
    add("avg|H|=" + std::to_string(H.size()) + "@" + std::to_string(H[1]), e);
    add("cmpl|H|=" + std::to_string(H.size()) + "@" + std::to_string(H[1]), A.sub(A.unity, e));
  }
  // p-integral central primitive idempotents and their averaged products
  for (size_t v = 0; v < cell.ord.size(); ++v) {
    const auto& z = cell.ord.simples[v].central_idem;
    add("z" + std::to_string(v + 1), z);
    for (const auto& H : subs) {
      if (H.size() == 1 || H.size() % cell.p == 0) continue;
      std::vector<mpq_class> e(A.dim, 0);
      for (uint16_t h : H) e[h] = mpq_class(1, static_cast<long>(H.size()));
      add("z" + std::to_string(v + 1) + "*avg@" + std::to_string(H[1]), A.mul(z, e));
    }
  }
  // matrix-unit idempotents cutting a single copy of a split ordinary simple:
  // solve rho_v(x) = E_11, rho_w(x) = 0 over Z_(p) when such a lattice point
  // exists (realizes one PIM fiber at a time)
  {
    size_t rows = 0;
    for (const auto& s : cell.ord.simples) rows += s.module.dim * s.module.dim;
    for (size_t v = 0; v < cell.ord.size(); ++v) {
      if (cell.ord.simples[v].endo_dim != 1) continue;
      Matrix<mpq_class> sys(rows, A.dim, kQ.zero());
      std::vector<mpq_class> rhs(rows, 0);
      size_t r0 = 0;
      for (size_t w = 0; w < cell.ord.size(); ++w) {
        const auto& M = cell.ord.simples[w].module;
        for (size_t gg = 0; gg < A.dim; ++gg)
          for (size_t i = 0; i < M.dim; ++i)
            for (size_t j = 0; j < M.dim; ++j)
              sys.at(r0 + i * M.dim + j, gg) = M.act[gg].at(i, j);
        if (w == v) rhs[r0] = 1;  // E_11 of block v
        r0 += M.dim * M.dim;
      }
      auto sol = solve_local(R, sys, rhs);
      if (!sol) continue;
      add("unit" + std::to_string(v + 1), *sol);
    }
  }
  for (const auto& P : pool.projectives) {
    pool.b_classes.push_back(b_map(cell, P));
    pool.e_classes.push_back(e_map(cell, P));
  }
  return pool;
}

SwanCheckResult swan_check(const CellContext& cell, unsigned trials, uint64_t seed) {
  SwanCheckResult res;
  res.trials = trials;
  auto pool = rational_projective_pool(cell);
  size_t nrat = pool.projectives.size();
  size_t nproxy = cell.lifted.idem.size();

  // proxy singles: b and e classes of each lifted primitive idempotent
  std::vector<K0Class> proxy_b;
  std::vector<G0Class> proxy_e;
  for (size_t i = 0; i < nproxy; ++i) {
    std::vector<unsigned> one(nproxy, 0);
    one[i] = 1;
    auto P = block_projective(cell.proxy, cell.lifted, one);
    proxy_b.push_back(b_map(cell, P));
    proxy_e.push_back(e_map(cell, P));
  }

  Rng rng(seed);
  auto sample = [&](bool use_proxy) {
    // a multiset of up to 3 summands, as index counts
    size_t n = use_proxy ? nproxy : nrat;
    std::vector<unsigned> counts(n, 0);
    size_t total = 1 + rng.below(3);
    for (size_t i = 0; i < total; ++i) counts[rng.below(n)]++;
    return counts;
  };
  auto class_sum = [&](const std::vector<unsigned>& counts, bool use_proxy) {
    std::pair<std::vector<long>, std::vector<long>> bv_ev;
    bv_ev.first.assign(cell.mod.size(), 0);
    bv_ev.second.assign(cell.ord.size(), 0);
    for (size_t i = 0; i < counts.size(); ++i) {
      if (!counts[i]) continue;
      const auto& b = use_proxy ? proxy_b[i] : pool.b_classes[i];
      const auto& e = use_proxy ? proxy_e[i] : pool.e_classes[i];
      for (size_t j = 0; j < b.v.size(); ++j) bv_ev.first[j] += counts[i] * b.v[j];
      for (size_t j = 0; j < e.v.size(); ++j) bv_ev.second[j] += counts[i] * e.v[j];
    }
    return bv_ev;
  };
  auto describe = [&](const std::vector<unsigned>& counts, bool use_proxy) {
    std::string s;
    for (size_t i = 0; i < counts.size(); ++i)
      for (unsigned c = 0; c < counts[i]; ++c) {
        if (!s.empty()) s += "+";
        s += use_proxy ? "proxyP" + std::to_string(i + 1) : pool.names[i];
      }
    return s;
  };

  for (unsigned t = 0; t < trials; ++t) {
    bool use_proxy = (t % 3 == 2);  // mix the two realizations
    auto left = sample(use_proxy);
    std::vector<unsigned> right;
    if (rng.below(3) == 0) {
      right = left;  // an equal pair exercises the "iff" in both directions
    } else {
      right = sample(use_proxy);
    }
    auto lc = class_sum(left, use_proxy);
    auto rc = class_sum(right, use_proxy);
    SwanTrial trial;
    trial.left = describe(left, use_proxy);
    trial.right = describe(right, use_proxy);
    trial.provenance = use_proxy ? "zpa-proxy" : "rational-idempotent";
    trial.b_equal = (lc.first == rc.first);
    trial.e_equal = (lc.second == rc.second);
    if (trial.b_equal != trial.e_equal) ++res.disagreements;
    res.log.push_back(std::move(trial));
  }
  res.pass = (res.disagreements == 0);
  return res;
}

}  // namespace workbench
