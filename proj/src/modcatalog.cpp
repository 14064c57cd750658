#include "workbench/modcatalog.hpp"

#include <algorithm>

namespace workbench {

std::vector<std::vector<Fq::Elem>> orthogonal_primitive_idempotents(const FDAlgebra<Fq>& A,
                                                                    const RadicalData<Fq>& rad,
                                                                    uint64_t seed) {
  const Fq& F = A.field;
  auto qa = quotient_algebra(A, rad.basis);
  auto prim = primitive_idempotents(qa.algebra, seed);
  auto mul = [&](const std::vector<Fq::Elem>& x, const std::vector<Fq::Elem>& y) {
    return A.mul(x, y);
  };
  auto add = [&](const std::vector<Fq::Elem>& x, const std::vector<Fq::Elem>& y) {
    return A.add(x, y);
  };
  auto scale = [&](long c, const std::vector<Fq::Elem>& x) { return A.scale(F.from_int(c), x); };
  auto eq = [&](const std::vector<Fq::Elem>& x, const std::vector<Fq::Elem>& y) {
    return A.eq(x, y);
  };
  unsigned budget = static_cast<unsigned>(2 * A.dim + 8);

  std::vector<std::vector<Fq::Elem>> out;
  auto complement = A.unity;
  for (size_t i = 0; i < prim.size(); ++i) {
    if (i + 1 == prim.size()) {
      out.push_back(complement);
      break;
    }
    auto c = A.mul(A.mul(complement, mat_vec(F, qa.lift, prim[i])), complement);
    auto e = newton_idempotent(c, mul, add, scale, eq, budget);
    out.push_back(e);
    complement = A.sub(complement, e);
  }
  // audit
  auto total = A.zero_vec();
  for (const auto& e : out) {
    require(A.eq(A.mul(e, e), e), errc::lift_diverged, "primitive lift not idempotent");
    total = A.add(total, e);
  }
  require(A.eq(total, A.unity), errc::lift_diverged, "primitive lifts do not sum to one");
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = 0; j < out.size(); ++j)
      if (i != j)
        require(A.is_zero(A.mul(out[i], out[j])), errc::lift_diverged,
                "primitive lifts not orthogonal");
  return out;
}

namespace {

// deterministic fingerprint for catalog ordering: characteristic polynomial
// of the sum of generator actions
std::string probe_fingerprint(const RepModule<Fq>& M) {
  const Fq& F = M.field();
  auto coords = M.A->zero_vec();
  for (uint32_t gi : M.A->generators_or_all()) coords[gi] = F.one();
  coords[0] = F.add(coords[0], F.one());
  auto cp = charpoly(F, M.act_element(coords));
  std::string s;
  for (auto c : cp) s += std::to_string(F.to_index(c)) + ",";
  return s;
}

}  // namespace

ModCatalog build_mod_catalog(const FiniteGroup& g, unsigned long p, uint64_t seed, unsigned max_s) {
  for (unsigned s = 1; s <= max_s; ++s) {
    Fq F(p, s);
    ModCatalog cat;
    cat.g = g;
    cat.p = p;
    cat.s = s;
    cat.omega = std::make_shared<FDAlgebra<Fq>>(group_algebra(F, g));
    cat.rad = radical(*cat.omega);

    auto reg = regular_module(cat.omega);
    auto ch = chop(reg, seed);
    std::vector<RepModule<Fq>> simples;
    std::vector<size_t> endo;
    for (auto& fac : ch.factors) {
      bool known = false;
      for (const auto& s0 : simples)
        if (fac.dim == s0.dim && iso_simple(fac, s0)) {
          known = true;
          break;
        }
      if (!known) {
        endo.push_back(hom_space(fac, fac).size());
        simples.push_back(std::move(fac));
      }
    }
    // completeness: Wedderburn dimension count over the semisimple quotient
    size_t wedderburn = 0;
    for (size_t i = 0; i < simples.size(); ++i)
      wedderburn += simples[i].dim * simples[i].dim / endo[i];
    require(wedderburn == cat.omega->dim - cat.rad.basis.dimension(), errc::incomplete_catalog,
            "catalog dimension certificate failed");
    bool split = std::all_of(endo.begin(), endo.end(), [](size_t e) { return e == 1; });
    if (!split) continue;  // retry over a bigger field

    // deterministic order: dimension, then probe fingerprint
    std::vector<size_t> order(simples.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<std::string> fps;
    for (auto& s0 : simples) fps.push_back(probe_fingerprint(s0));
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
      if (simples[x].dim != simples[y].dim) return simples[x].dim < simples[y].dim;
      return fps[x] < fps[y];
    });
    for (size_t i : order) cat.simples.push_back(std::move(simples[i]));
    for (size_t i = 0; i < cat.simples.size(); ++i) cat.labels.push_back("S" + std::to_string(i + 1));

    // PIMs from one primitive idempotent per iso class
    auto idems = orthogonal_primitive_idempotents(*cat.omega, cat.rad, seed ^ 0x1357);
    cat.pims.assign(cat.simples.size(), RepModule<Fq>{});
    cat.pim_idems.assign(cat.simples.size(), {});
    std::vector<unsigned> seen(cat.simples.size(), 0);
    for (const auto& e : idems) {
      auto P = principal_module(cat, e);
      auto t = top_of(cat, P);
      auto tch = chop(t, seed ^ 0x7531);
      require(tch.factors.size() == 1, errc::not_primitive, "idempotent top has length > 1");
      size_t si = match_simple(cat, tch.factors[0]);
      if (seen[si] == 0) {
        cat.pims[si] = std::move(P);
        cat.pim_idems[si] = e;
      }
      ++seen[si];
    }
    // over a splitting field the regular module contains each PIM dim(S) times
    for (size_t i = 0; i < cat.simples.size(); ++i) {
      require(seen[i] == cat.simples[i].dim, errc::incomplete_catalog,
              "primitive idempotent multiplicity mismatch");
    }
    return cat;
  }
  raise(errc::incomplete_catalog, "no splitting field of degree <= " + std::to_string(max_s));
}

size_t match_simple(const ModCatalog& cat, const RepModule<Fq>& s) {
  for (size_t i = 0; i < cat.simples.size(); ++i)
    if (s.dim == cat.simples[i].dim && iso_simple(s, cat.simples[i])) return i;
  raise(errc::incomplete_catalog, "simple module not in catalog");
}

RepModule<Fq> top_of(const ModCatalog& cat, const RepModule<Fq>& M) {
  const Fq& F = cat.field();
  std::vector<std::vector<Fq::Elem>> radm;
  for (const auto& r : span_vectors(cat.rad.basis)) {
    auto rm = M.act_element(r);
    for (size_t j = 0; j < M.dim; ++j) {
      std::vector<Fq::Elem> v(M.dim);
      for (size_t i = 0; i < M.dim; ++i) v[i] = rm.at(i, j);
      radm.push_back(std::move(v));
    }
  }
  auto sp = make_span(F, M.dim, radm);
  return quotient_module(M, sp).first;
}

std::vector<unsigned> pim_multiplicities(const ModCatalog& cat, const RepModule<Fq>& proj) {
  auto t = top_of(cat, proj);
  auto ch = chop(t, 8642);
  return composition_vector(ch, cat.simples);
}

RepModule<Fq> principal_module(const ModCatalog& cat, const std::vector<Fq::Elem>& e) {
  const Fq& F = cat.field();
  const auto& A = *cat.omega;
  auto Re = A.right_mult_matrix(e);
  std::vector<std::vector<Fq::Elem>> cols;
  for (size_t j = 0; j < A.dim; ++j) {
    std::vector<Fq::Elem> v(A.dim);
    for (size_t i = 0; i < A.dim; ++i) v[i] = Re.at(i, j);
    cols.push_back(std::move(v));
  }
  auto sp = make_span(F, A.dim, cols);
  auto reg = regular_module(cat.omega);
  return submodule(reg, sp);
}

}  // namespace workbench
