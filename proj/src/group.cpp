#include "workbench/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace workbench {

uint16_t FiniteGroup::power(uint16_t a, long e) const {
  if (e < 0) return power(invert(a), -e);
  uint16_t r = id, base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

unsigned FiniteGroup::order_of(uint16_t a) const {
  unsigned k = 1;
  uint16_t x = a;
  while (x != id) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

void FiniteGroup::finalize() {
  require(n >= 1 && n <= kMaxGroupOrder, errc::unsupported_order,
          "group order must be in [1, " + std::to_string(kMaxGroupOrder) + "]");
  require(table.size() == n * n, errc::bad_input, "Cayley table size mismatch");

  // identity
  bool found = false;
  for (uint16_t e = 0; e < n; ++e) {
    bool ok = true;
    for (uint16_t a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) {
      id = e;
      found = true;
      break;
    }
  }
  require(found, errc::bad_input, "no identity element");

  // inverses
  inv.assign(n, 0);
  for (uint16_t a = 0; a < n; ++a) {
    bool has = false;
    for (uint16_t b = 0; b < n; ++b) {
      if (mul(a, b) == id && mul(b, a) == id) {
        inv[a] = b;
        has = true;
        break;
      }
    }
    require(has, errc::bad_input, "element without inverse");
  }

  // exhaustive associativity
  for (uint16_t a = 0; a < n; ++a)
    for (uint16_t b = 0; b < n; ++b)
      for (uint16_t c = 0; c < n; ++c)
        require(mul(mul(a, b), c) == mul(a, mul(b, c)), errc::bad_input,
                "Cayley table is not associative");

  if (gens.empty()) {
    // default generating set: greedy closure
    std::vector<bool> seen(n, false);
    seen[id] = true;
    size_t covered = 1;
    for (uint16_t a = 0; a < n && covered < n; ++a) {
      if (seen[a]) continue;
      gens.push_back(a);
      // close
      std::vector<uint16_t> frontier{id};
      std::vector<bool> cl(n, false);
      cl[id] = true;
      std::vector<uint16_t> elems{id};
      for (size_t i = 0; i < elems.size(); ++i)
        for (uint16_t g : gens) {
          uint16_t x = mul(elems[i], g);
          if (!cl[x]) {
            cl[x] = true;
            elems.push_back(x);
          }
        }
      covered = elems.size();
      seen = cl;
    }
  }
}

bool FiniteGroup::is_p_group(unsigned long p) const {
  size_t m = n;
  while (m % p == 0) m /= p;
  return m == 1;
}

std::vector<std::vector<uint16_t>> FiniteGroup::conjugacy_classes() const {
  std::vector<std::vector<uint16_t>> classes;
  std::vector<bool> done(n, false);
  for (uint16_t a = 0; a < n; ++a) {
    if (done[a]) continue;
    std::set<uint16_t> cls;
    for (uint16_t g = 0; g < n; ++g) cls.insert(mul(mul(g, a), invert(g)));
    std::vector<uint16_t> v(cls.begin(), cls.end());
    for (uint16_t x : v) done[x] = true;
    classes.push_back(std::move(v));
  }
  return classes;
}

size_t FiniteGroup::p_regular_class_count(unsigned long p) const {
  size_t count = 0;
  for (const auto& cls : conjugacy_classes())
    if (order_of(cls[0]) % p != 0) ++count;
  return count;
}

std::vector<std::vector<uint16_t>> FiniteGroup::cyclic_subgroups() const {
  std::set<std::vector<uint16_t>> subs;
  for (uint16_t a = 0; a < n; ++a) {
    std::set<uint16_t> elems;
    uint16_t x = id;
    do {
      elems.insert(x);
      x = mul(x, a);
    } while (x != id);
    subs.insert(std::vector<uint16_t>(elems.begin(), elems.end()));
  }
  return {subs.begin(), subs.end()};
}

bool is_automorphism(const FiniteGroup& g, const Automorphism& phi) {
  if (phi.size() != g.n) return false;
  std::vector<bool> hit(g.n, false);
  for (uint16_t x : phi) {
    if (x >= g.n || hit[x]) return false;
    hit[x] = true;
  }
  for (uint16_t a = 0; a < g.n; ++a)
    for (uint16_t b = 0; b < g.n; ++b)
      if (phi[g.mul(a, b)] != g.mul(phi[a], phi[b])) return false;
  return true;
}

Automorphism compose_autos(const Automorphism& a, const Automorphism& b) {
  Automorphism r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

Automorphism identity_auto(size_t n) {
  Automorphism r(n);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

unsigned automorphism_order(const FiniteGroup& g, const Automorphism& phi) {
  Automorphism x = phi;
  unsigned k = 1;
  auto idp = identity_auto(g.n);
  while (x != idp) {
    x = compose_autos(phi, x);
    ++k;
    require(k <= 4096, errc::bad_input, "automorphism order runaway");
  }
  return k;
}

Automorphism automorphism_power(const FiniteGroup& g, const Automorphism& phi, unsigned long e) {
  Automorphism r = identity_auto(g.n), base = phi;
  while (e) {
    if (e & 1) r = compose_autos(base, r);
    base = compose_autos(base, base);
    e >>= 1;
  }
  return r;
}

Automorphism inversion_automorphism(const FiniteGroup& g) {
  Automorphism phi(g.n);
  for (uint16_t a = 0; a < g.n; ++a) phi[a] = g.invert(a);
  require(is_automorphism(g, phi), errc::not_an_automorphism,
          "inversion is only an automorphism of abelian groups");
  return phi;
}

FiniteGroup cyclic_group(unsigned n) {
  require(n >= 1, errc::bad_input, "cyclic group order must be positive");
  FiniteGroup g;
  g.n = n;
  g.table.assign(n * n, 0);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) g.table[i * n + j] = static_cast<uint16_t>((i + j) % n);
  if (n > 1) g.gens = {1};
  g.name = "C" + std::to_string(n);
  g.finalize();
  return g;
}

FiniteGroup dihedral_group(unsigned n) {
  require(n >= 1, errc::bad_input, "dihedral parameter must be positive");
  unsigned ord = 2 * n;
  FiniteGroup g;
  g.n = ord;
  g.table.assign(ord * ord, 0);
  // indices: i < n are rotations r^i, n + i are reflections s r^i
  auto idx = [&](bool refl, unsigned i) { return (refl ? n : 0) + i % n; };
  for (unsigned x = 0; x < ord; ++x) {
    bool xr = x >= n;
    unsigned xi = x % n;
    for (unsigned y = 0; y < ord; ++y) {
      bool yr = y >= n;
      unsigned yi = y % n;
      // (s^a r^i)(s^b r^j) = s^(a+b) r^(±i + j)
      unsigned i2 = yr ? (n - xi) % n : xi;
      g.table[x * ord + y] = static_cast<uint16_t>(idx(xr != yr, (i2 + yi) % n));
    }
  }
  g.gens = n > 1 ? std::vector<uint16_t>{1, static_cast<uint16_t>(n)}
                 : std::vector<uint16_t>{static_cast<uint16_t>(n)};
  g.name = "D" + std::to_string(n);
  g.finalize();
  return g;
}

FiniteGroup quaternion_group(unsigned n) {
  require(n >= 8 && n % 4 == 0, errc::bad_input, "generalized quaternion order must be 4k >= 8");
  unsigned k = n / 4;           // a has order 2k, b^2 = a^k
  unsigned m = 2 * k;           // order of a
  FiniteGroup g;
  g.n = n;
  g.table.assign(n * n, 0);
  // index: a^i b^j with i < m, j < 2 -> i + m*j
  for (unsigned i1 = 0; i1 < m; ++i1)
    for (unsigned j1 = 0; j1 < 2; ++j1)
      for (unsigned i2 = 0; i2 < m; ++i2)
        for (unsigned j2 = 0; j2 < 2; ++j2) {
          unsigned x = i1 + m * j1, y = i2 + m * j2;
          unsigned i, j;
          if (j1 == 0) {
            i = (i1 + i2) % m;
            j = j2;
          } else {
            // b a^i2 = a^{-i2} b
            i = (i1 + m - i2) % m;
            j = 1 + j2;
            if (j == 2) {
              j = 0;
              i = (i + k) % m;  // b^2 = a^k
            }
          }
          g.table[x * n + y] = static_cast<uint16_t>(i + m * j);
        }
  g.gens = {1, static_cast<uint16_t>(m)};
  g.name = "Q" + std::to_string(n);
  g.finalize();
  return g;
}

namespace {

std::vector<std::vector<uint8_t>> all_permutations(unsigned n) {
  std::vector<uint8_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<uint8_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool perm_even(const std::vector<uint8_t>& p) {
  unsigned inversions = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

FiniteGroup group_from_perms(std::vector<std::vector<uint8_t>> perms, const std::string& name) {
  std::sort(perms.begin(), perms.end());
  size_t ord = perms.size();
  std::map<std::vector<uint8_t>, uint16_t> index;
  for (size_t i = 0; i < ord; ++i) index[perms[i]] = static_cast<uint16_t>(i);
  FiniteGroup g;
  g.n = ord;
  g.table.assign(ord * ord, 0);
  for (size_t x = 0; x < ord; ++x)
    for (size_t y = 0; y < ord; ++y) {
      // (s*t)(i) = s(t(i))
      std::vector<uint8_t> prod(perms[x].size());
      for (size_t i = 0; i < prod.size(); ++i) prod[i] = perms[x][perms[y][i]];
      g.table[x * ord + y] = index.at(prod);
    }
  g.name = name;
  g.finalize();
  return g;
}

}  // namespace

FiniteGroup symmetric_group(unsigned n) {
  require(n >= 1 && n <= 4, errc::unsupported_order, "symmetric groups supported up to S4");
  return group_from_perms(all_permutations(n), "S" + std::to_string(n));
}

FiniteGroup alternating_group(unsigned n) {
  require(n >= 1 && n <= 4, errc::unsupported_order, "alternating groups supported up to A4");
  std::vector<std::vector<uint8_t>> evens;
  for (auto& p : all_permutations(n))
    if (perm_even(p)) evens.push_back(p);
  return group_from_perms(std::move(evens), "A" + std::to_string(n));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  size_t ord = a.n * b.n;
  FiniteGroup g;
  g.n = ord;
  g.table.assign(ord * ord, 0);
  auto idx = [&](uint16_t x, uint16_t y) { return static_cast<uint16_t>(x * b.n + y); };
  for (uint16_t x1 = 0; x1 < a.n; ++x1)
    for (uint16_t y1 = 0; y1 < b.n; ++y1)
      for (uint16_t x2 = 0; x2 < a.n; ++x2)
        for (uint16_t y2 = 0; y2 < b.n; ++y2)
          g.table[idx(x1, y1) * ord + idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
  g.name = a.name + "x" + b.name;
  g.finalize();
  return g;
}

FiniteGroup semidirect_product(const FiniteGroup& normal, const Automorphism& phi, unsigned k) {
  require(is_automorphism(normal, phi), errc::not_an_automorphism,
          "semidirect action is not an automorphism");
  require(k >= 1, errc::bad_input, "acting cyclic group must be nontrivial");
  require(automorphism_power(normal, phi, k) == identity_auto(normal.n), errc::not_an_automorphism,
          "automorphism order does not divide k");
  size_t ord = normal.n * k;
  // precompute phi^c
  std::vector<Automorphism> powers(k);
  powers[0] = identity_auto(normal.n);
  for (unsigned c = 1; c < k; ++c) powers[c] = compose_autos(phi, powers[c - 1]);
  FiniteGroup g;
  g.n = ord;
  g.table.assign(ord * ord, 0);
  auto idx = [&](uint16_t h, unsigned c) { return static_cast<uint16_t>(h * k + c % k); };
  for (uint16_t h1 = 0; h1 < normal.n; ++h1)
    for (unsigned c1 = 0; c1 < k; ++c1)
      for (uint16_t h2 = 0; h2 < normal.n; ++h2)
        for (unsigned c2 = 0; c2 < k; ++c2)
          g.table[idx(h1, c1) * ord + idx(h2, c2)] =
              idx(normal.mul(h1, powers[c1][h2]), c1 + c2);
  g.name = normal.name + ":C" + std::to_string(k);
  g.finalize();
  return g;
}

}  // namespace workbench
