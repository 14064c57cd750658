#pragma once

#include <memory>
#include <string>
#include <vector>

#include "workbench/fdalgebra.hpp"
#include "workbench/group.hpp"
#include "workbench/repmodule.hpp"

namespace workbench {

// subalgebra structure on a multiplicatively closed span, with the inclusion
template <typename F>
std::pair<FDAlgebra<F>, Matrix<typename F::Elem>> algebra_on_span(
    const FDAlgebra<F>& A, const Subspace<F>& sp, const std::vector<typename F::Elem>& unit) {
  const F& field = A.field;
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
      require(co.has_value(), errc::bad_input, "span is not multiplicatively closed");
      for (size_t k = 0; k < q; ++k)
        if (!field.is_zero((*co)[k])) B.sc[i * q + j].emplace_back(static_cast<uint32_t>(k), (*co)[k]);
    }
  auto uco = coords_in_rref(field, sp.basis, unit);
  require(uco.has_value(), errc::bad_input, "unit not in span");
  B.unity = *uco;
  for (size_t k = 0; k < q; ++k) B.labels.push_back("z" + std::to_string(k));
  B.name = A.name + ".sub";
  return {B, incl};
}

// number of rational conjugacy classes (classes fused under all power maps
// coprime to the exponent); equals the number of simple Q[G]-modules
size_t rational_class_count(const FiniteGroup& g);

struct QSimple {
  RepModule<Rationals> module;
  std::vector<mpq_class> central_idem;  // block idempotent, Q[G] coordinates
  std::vector<long> character;          // integer character value per group element
  size_t endo_dim = 1;                  // dim_Q End(V)
  size_t block_mult = 1;                // multiplicity of V in the regular module
  std::string label;
};

struct QCatalog {
  std::shared_ptr<const FDAlgebra<Rationals>> QG;
  FiniteGroup g;
  std::vector<QSimple> simples;
  bool split = true;  // all endomorphism rings are Q

  size_t size() const { return simples.size(); }
};

QCatalog build_q_catalog(const FiniteGroup& g, uint64_t seed = 60257);

// multiplicity vector of a semisimple Q[G]-module given by its action
// matrices, computed from the ranks of the central idempotents
std::vector<unsigned> ordinary_multiplicities(const QCatalog& cat, const RepModule<Rationals>& M);

}  // namespace workbench
