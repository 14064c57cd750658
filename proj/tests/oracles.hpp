#pragma once

// Test-only reference routines, kept independent of the library's chop path:
// socle-series composition vectors (repeated kernel-of-radical) and helpers
// for building explicit small modules.

#include "workbench/modcatalog.hpp"
#include "workbench/repmodule.hpp"

namespace workbench::oracles {

// multiplicity of each catalog simple in a SEMISIMPLE module, by hom counting
template <typename F>
std::vector<unsigned> semisimple_multiplicities(const std::vector<RepModule<F>>& simples,
                                                const RepModule<F>& M) {
  std::vector<unsigned> out;
  size_t covered = 0;
  for (const auto& s : simples) {
    size_t h = hom_space(s, M).size();
    size_t e = hom_space(s, s).size();
    if (h % e != 0) raise(errc::bad_input, "socle oracle: hom count not divisible");
    out.push_back(static_cast<unsigned>(h / e));
    covered += (h / e) * s.dim;
  }
  if (covered != M.dim) raise(errc::bad_input, "socle oracle: module not semisimple");
  return out;
}

// exhaustive socle-series chop: strip soc(M) = Ann_M(rad) layer by layer
template <typename F>
std::vector<unsigned> socle_series_vector(const std::vector<RepModule<F>>& simples,
                                          const Subspace<F>& rad_basis, RepModule<F> M) {
  const F& f = M.field();
  std::vector<unsigned> total(simples.size(), 0);
  while (M.dim > 0) {
    // soc = common kernel of the radical action
    auto rads = span_vectors(rad_basis);
    Matrix<typename F::Elem> stacked(rads.size() * M.dim, M.dim, f.zero());
    for (size_t r = 0; r < rads.size(); ++r) {
      auto a = M.act_element(rads[r]);
      for (size_t i = 0; i < M.dim; ++i)
        for (size_t j = 0; j < M.dim; ++j) stacked.at(r * M.dim + i, j) = a.at(i, j);
    }
    auto K = rads.empty() ? identity(f, M.dim) : kernel_basis(f, stacked);
    std::vector<std::vector<typename F::Elem>> kv;
    for (size_t c = 0; c < K.cols; ++c) {
      std::vector<typename F::Elem> v(M.dim);
      for (size_t i = 0; i < M.dim; ++i) v[i] = K.at(i, c);
      kv.push_back(std::move(v));
    }
    auto soc = make_span(f, M.dim, kv);
    if (soc.dimension() == 0) raise(errc::bad_input, "socle oracle: empty socle");
    auto socmod = submodule(M, soc);
    auto mult = semisimple_multiplicities(simples, socmod);
    for (size_t i = 0; i < total.size(); ++i) total[i] += mult[i];
    if (soc.dimension() == M.dim) break;
    M = quotient_module(M, soc).first;
  }
  return total;
}

}  // namespace workbench::oracles
