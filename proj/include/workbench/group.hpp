#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "workbench/error.hpp"

namespace workbench {

inline constexpr size_t kMaxGroupOrder = 64;

// finite group as an explicit Cayley table; axioms checked exhaustively at
// construction (order is capped so this stays trivial)
struct FiniteGroup {
  size_t n = 1;
  std::vector<uint16_t> table;  // table[i*n + j] = i*j
  std::vector<uint16_t> inv;
  uint16_t id = 0;
  std::vector<uint16_t> gens;
  std::string name = "1";

  uint16_t mul(uint16_t a, uint16_t b) const { return table[a * n + b]; }
  uint16_t invert(uint16_t a) const { return inv[a]; }
  uint16_t power(uint16_t a, long e) const;
  unsigned order_of(uint16_t a) const;

  void finalize();  // fills inv/id, checks all axioms
  bool is_p_group(unsigned long p) const;

  // conjugacy classes ordered by their minimal element index
  std::vector<std::vector<uint16_t>> conjugacy_classes() const;
  // number of classes of elements with order prime to p
  size_t p_regular_class_count(unsigned long p) const;

  // element sets of the distinct cyclic subgroups, each sorted
  std::vector<std::vector<uint16_t>> cyclic_subgroups() const;
};

// a permutation of element indices; automorphism checks are exhaustive
using Automorphism = std::vector<uint16_t>;

bool is_automorphism(const FiniteGroup& g, const Automorphism& phi);
Automorphism compose_autos(const Automorphism& a, const Automorphism& b);
Automorphism identity_auto(size_t n);
unsigned automorphism_order(const FiniteGroup& g, const Automorphism& phi);
Automorphism automorphism_power(const FiniteGroup& g, const Automorphism& phi, unsigned long e);
Automorphism inversion_automorphism(const FiniteGroup& g);  // g -> g^{-1}, abelian groups only

FiniteGroup cyclic_group(unsigned n);
FiniteGroup dihedral_group(unsigned n);     // order 2n
FiniteGroup quaternion_group(unsigned n);   // generalized quaternion, order n in {8, 16, 32}
FiniteGroup symmetric_group(unsigned n);    // n <= 4
FiniteGroup alternating_group(unsigned n);  // n <= 4
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
// N x| C_k with the generator of C_k acting by phi (phi^k must be identity)
FiniteGroup semidirect_product(const FiniteGroup& normal, const Automorphism& phi, unsigned k);

}  // namespace workbench
