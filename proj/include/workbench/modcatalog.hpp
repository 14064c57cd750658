#pragma once

#include <memory>
#include <string>
#include <vector>

#include "workbench/fdalgebra.hpp"
#include "workbench/group.hpp"
#include "workbench/repmodule.hpp"

namespace workbench {

// orthogonal primitive idempotents of a finite-dimensional algebra over F_q:
// primitive idempotents of A/rad, lifted by Newton refinement inside
// shrinking corners so orthogonality is exact
std::vector<std::vector<Fq::Elem>> orthogonal_primitive_idempotents(const FDAlgebra<Fq>& A,
                                                                    const RadicalData<Fq>& rad,
                                                                    uint64_t seed = 271828);

// simple and projective-indecomposable catalogs of F_q[G] over the smallest
// splitting extension F_{p^s}, s <= 6
struct ModCatalog {
  std::shared_ptr<const FDAlgebra<Fq>> omega;  // F_q[G]
  FiniteGroup g;
  unsigned long p = 2;
  unsigned s = 1;  // extension degree actually used
  RadicalData<Fq> rad;
  std::vector<RepModule<Fq>> simples;
  std::vector<RepModule<Fq>> pims;
  std::vector<std::vector<Fq::Elem>> pim_idems;  // one primitive idempotent per PIM class
  std::vector<std::string> labels;

  const Fq& field() const { return omega->field; }
  size_t size() const { return simples.size(); }
};

ModCatalog build_mod_catalog(const FiniteGroup& g, unsigned long p, uint64_t seed = 40961,
                             unsigned max_s = 6);

// index of the catalog simple isomorphic to the given simple module
size_t match_simple(const ModCatalog& cat, const RepModule<Fq>& s);

// top of a module: quotient by rad * M
RepModule<Fq> top_of(const ModCatalog& cat, const RepModule<Fq>& M);

// PIM multiplicities of a projective module over omega, from its top
std::vector<unsigned> pim_multiplicities(const ModCatalog& cat, const RepModule<Fq>& proj);

// the module omega * e for an idempotent e, as a submodule of the regular
RepModule<Fq> principal_module(const ModCatalog& cat, const std::vector<Fq::Elem>& e);

}  // namespace workbench
