#include "workbench/qcatalog.hpp"

#include <algorithm>
#include <numeric>

namespace workbench {

namespace {

size_t find_root(std::vector<size_t>& parent, size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

size_t rational_class_count(const FiniteGroup& g) {
  auto classes = g.conjugacy_classes();
  std::vector<size_t> class_of(g.n);
  for (size_t c = 0; c < classes.size(); ++c)
    for (uint16_t x : classes[c]) class_of[x] = c;
  unsigned long expo = 1;
  for (uint16_t x = 0; x < g.n; ++x) expo = std::lcm<unsigned long>(expo, g.order_of(x));
  std::vector<size_t> parent(classes.size());
  std::iota(parent.begin(), parent.end(), size_t{0});
  for (size_t c = 0; c < classes.size(); ++c) {
    uint16_t rep = classes[c][0];
    for (unsigned long k = 1; k < expo; ++k) {
      if (std::gcd(k, expo) != 1) continue;
      size_t other = class_of[g.power(rep, static_cast<long>(k))];
      size_t a = find_root(parent, c), b = find_root(parent, other);
      if (a != b) parent[a] = b;
    }
  }
  size_t count = 0;
  for (size_t c = 0; c < classes.size(); ++c)
    if (find_root(parent, c) == c) ++count;
  return count;
}

QCatalog build_q_catalog(const FiniteGroup& g, uint64_t seed) {
  const Rationals Qf;
  QCatalog cat;
  cat.g = g;
  cat.QG = std::make_shared<FDAlgebra<Rationals>>(group_algebra(Qf, g));
  const auto& A = *cat.QG;

  // split the center into primitive idempotents (the block decomposition);
  // the rational class count certifies completeness
  auto zc = center_subspace(A);
  auto za = algebra_on_span(A, zc, A.unity);
  auto prim_z = primitive_idempotents(za.first, seed);
  require(prim_z.size() == rational_class_count(g), errc::incomplete_catalog,
          "block count does not match the rational class count");

  for (const auto& ez : prim_z) {
    QSimple s;
    s.central_idem = mat_vec(Qf, za.second, ez);

    // one primitive idempotent inside the block cuts out a simple module
    auto blk = corner_algebra(A, s.central_idem);
    auto prim_b = primitive_idempotents(blk.first, seed ^ 0xabcdefULL);
    require(!prim_b.empty(), errc::incomplete_catalog, "block without primitive idempotents");
    s.block_mult = prim_b.size();
    auto eps = mat_vec(Qf, blk.second, prim_b[0]);

    // V = QG * eps: column space of right multiplication by eps
    auto R_eps = A.right_mult_matrix(eps);
    std::vector<std::vector<mpq_class>> cols;
    for (size_t j = 0; j < A.dim; ++j) {
      std::vector<mpq_class> v(A.dim);
      for (size_t i = 0; i < A.dim; ++i) v[i] = R_eps.at(i, j);
      cols.push_back(std::move(v));
    }
    auto sp = make_span(Qf, A.dim, cols);
    RepModule<Rationals> regular = regular_module(cat.QG);
    s.module = submodule(regular, sp);
    s.module.validate();

    s.endo_dim = hom_space(s.module, s.module).size();
    require(s.module.dim == s.block_mult * s.endo_dim, errc::incomplete_catalog,
            "block's Wedderburn bookkeeping failed");
    for (uint16_t x = 0; x < g.n; ++x) {
      mpq_class tr = 0;
      for (size_t d = 0; d < s.module.dim; ++d) tr += s.module.act[x].at(d, d);
      require(tr.get_den() == 1, errc::bad_input, "character value not an integer");
      s.character.push_back(static_cast<long>(mpz_get_si(tr.get_num().get_mpz_t())));
    }
    cat.simples.push_back(std::move(s));
  }

  std::sort(cat.simples.begin(), cat.simples.end(), [](const QSimple& x, const QSimple& y) {
    if (x.module.dim != y.module.dim) return x.module.dim < y.module.dim;
    return x.character > y.character;  // within a dimension: trivial-like first
  });
  for (size_t i = 0; i < cat.simples.size(); ++i) cat.simples[i].label = "V" + std::to_string(i + 1);

  size_t total = 0;
  for (const auto& s : cat.simples) {
    total += s.module.dim * s.block_mult;
    if (s.endo_dim != 1) cat.split = false;
  }
  require(total == g.n, errc::incomplete_catalog,
          "regular module does not decompose into the catalog");
  return cat;
}

std::vector<unsigned> ordinary_multiplicities(const QCatalog& cat, const RepModule<Rationals>& M) {
  const Rationals Qf;
  std::vector<unsigned> mult;
  size_t total = 0;
  for (const auto& s : cat.simples) {
    auto zact = M.act_element(s.central_idem);
    size_t r = mat_rank(Qf, zact);
    require(r % s.module.dim == 0, errc::not_a_module,
            "central idempotent rank not divisible by the simple dimension");
    mult.push_back(static_cast<unsigned>(r / s.module.dim));
    total += r;
  }
  require(total == M.dim, errc::not_a_module, "module is not semisimple over the catalog");
  return mult;
}

}  // namespace workbench
