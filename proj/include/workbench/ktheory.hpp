#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "workbench/modcatalog.hpp"
#include "workbench/qcatalog.hpp"
#include "workbench/zpa_order.hpp"

namespace workbench {

// integer matrices for the K-theory bookkeeping (rows of long)
using IntMat = std::vector<std::vector<long>>;

IntMat int_mat_mul(const IntMat& a, const IntMat& b);
IntMat int_mat_transpose(const IntMat& a);
mpz_class int_mat_det(const IntMat& a);
bool is_identity(const IntMat& a);

// class vectors in the PIM / simple bases
struct K0Class {
  std::string basis;  // e.g. "F_2[S3]-pims"
  std::vector<long> v;
  bool operator==(const K0Class& o) const { return basis == o.basis && v == o.v; }
};
struct G0Class {
  std::string basis;
  std::vector<long> v;
  bool operator==(const G0Class& o) const { return basis == o.basis && v == o.v; }
};

// a projective over the order, represented by an exact rational idempotent
// matrix with p-integral entries
struct ProjectiveRational {
  std::shared_ptr<const FDAlgebra<Rationals>> QG;
  size_t rank = 1;
  std::vector<std::vector<mpq_class>> entries;  // rank*rank, each a Q[G] coordinate vector
  std::string provenance = "rational-idempotent";

  const std::vector<mpq_class>& at(size_t i, size_t j) const { return entries[i * rank + j]; }
};

// everything the maps need for one (G, p) cell
struct CellContext {
  FiniteGroup g;
  unsigned long p = 2;
  unsigned precision_a = 8;
  QCatalog ord;
  ModCatalog mod;
  std::shared_ptr<const ZpaGroupRing> proxy;
  LiftedIdempotents lifted;

  std::string mod_basis_id() const { return mod.omega->name + "-pims"; }
  std::string ord_basis_id() const { return ord.QG->name + "-simples"; }
};

CellContext build_cell(const FiniteGroup& g, unsigned long p, unsigned precision_a = 8,
                       uint64_t seed = 1729);

// ---------------------------------------------------------------------------
// full lattices and the decomposition map
// ---------------------------------------------------------------------------

// an R-basis (columns) of the smallest G-stable R-lattice containing the
// given columns; the ambient module supplies the action
Matrix<mpq_class> full_lattice_basis(const PLocal& R, const RepModule<Rationals>& V,
                                     const FiniteGroup& g,
                                     const std::vector<std::vector<mpq_class>>& start_cols);

// reduction of a full lattice mod p, as a module over the cell's modular
// splitting-field group algebra
RepModule<Fq> reduce_lattice(const CellContext& cell, const RepModule<Rationals>& V,
                             const Matrix<mpq_class>& lattice);

// d([V]) in the modular simple basis, with the Jordan-Holder double chop
std::vector<unsigned> decomposition_vector(const CellContext& cell,
                                           const RepModule<Rationals>& V, uint64_t seed = 4242);

// the proposition-level property: `trials` random full lattices all reduce to
// the same composition vector
bool lattice_independence_check(const CellContext& cell, const RepModule<Rationals>& V,
                                unsigned trials, uint64_t seed = 31337);

// ---------------------------------------------------------------------------
// the maps b and e
// ---------------------------------------------------------------------------

// b: reduce an idempotent matrix mod p and decompose the image into PIMs
K0Class b_map(const CellContext& cell, const ProjectiveRational& P);
K0Class b_map(const CellContext& cell, const ZpaProjective& P);

// e: decompose K (x) P into ordinary simples; rational idempotents go through
// central-idempotent ranks, proxies through exact character recovery
G0Class e_map(const CellContext& cell, const ProjectiveRational& P);
G0Class e_map(const CellContext& cell, const ZpaProjective& P);

// ---------------------------------------------------------------------------
// checks
// ---------------------------------------------------------------------------

struct SquareCheckResult {
  IntMat C;  // s x s Cartan matrix of the splitting-field catalog
  IntMat D;  // (#ordinary simples) x s decomposition matrix
  IntMat B;  // (#proxy classes) x s, reductions of the lifted projectives
  IntMat E;  // (#proxy classes) x (#ordinary simples), generic fibers
  bool de_eq_cb = false;  // E*D == B*C^T, the commuting square
  std::optional<bool> dtd_eq_c;  // D^T*D == C, asserted when Q splits
  std::optional<bool> e_eq_dt;   // E == B*D^T, asserted when Q splits
  mpz_class detC;
  bool det_is_p_power = false;
  long det_p_exponent = 0;
  bool c_identity_expected = false;  // p does not divide |G|
  bool c_is_identity = false;
  bool ord_split = false;
  unsigned splitting_degree = 1;
  bool pass = false;
};

SquareCheckResult square_check(const CellContext& cell, uint64_t seed = 11);

struct SwanTrial {
  std::string left, right;  // multiset descriptions
  bool b_equal = false, e_equal = false;
  std::string provenance;
};
struct SwanCheckResult {
  unsigned trials = 0;
  unsigned disagreements = 0;
  std::vector<SwanTrial> log;
  bool pass = false;
};

SwanCheckResult swan_check(const CellContext& cell, unsigned trials, uint64_t seed = 7);

// the rational idempotent pool used to realize projectives for Swan runs
struct RationalPool {
  std::vector<std::string> names;
  std::vector<ProjectiveRational> projectives;
  std::vector<K0Class> b_classes;
  std::vector<G0Class> e_classes;
};
RationalPool rational_projective_pool(const CellContext& cell);

}  // namespace workbench
