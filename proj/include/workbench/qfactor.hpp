#pragma once

#include <utility>
#include <vector>

#include "workbench/poly.hpp"
#include "workbench/rings.hpp"

namespace workbench {

// Z/m for an arbitrary-precision modulus; representatives in [0, m).  Used by
// the Hensel lifting stage of rational factorization.
struct Zmod {
  using Elem = mpz_class;
  static constexpr bool is_field = false;
  mpz_class m;

  explicit Zmod(mpz_class mod) : m(std::move(mod)) {}
  Elem red(Elem x) const {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
  }
  Elem zero() const { return 0; }
  Elem one() const { return red(1); }
  Elem from_int(long n) const { return red(mpz_class(n)); }
  bool is_zero(const Elem& x) const { return x == 0; }
  bool eq(const Elem& x, const Elem& y) const { return x == y; }
  Elem add(const Elem& x, const Elem& y) const { return red(x + y); }
  Elem sub(const Elem& x, const Elem& y) const { return red(x - y); }
  Elem mul(const Elem& x, const Elem& y) const { return red(x * y); }
  Elem neg(const Elem& x) const { return red(-x); }
  bool is_unit(const Elem& x) const {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return g == 1;
  }
  Elem inv(const Elem& x) const {
    mpz_class r;
    require(mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) != 0, errc::non_unit_division,
            "element not invertible mod m");
    return r;
  }
  // centered representative in (-m/2, m/2]
  mpz_class centered(const Elem& x) const { return 2 * x > m ? mpz_class(x - m) : x; }
  std::string to_string(const Elem& x) const { return x.get_str(); }
  std::string name() const { return "Z/m"; }
};

// monic irreducible factors over Q with multiplicities (Zassenhaus: reduction
// mod a good prime, quadratic Hensel lifting, subset recombination)
std::vector<std::pair<PolyOf<Rationals>, unsigned>> q_factor(const PolyOf<Rationals>& f);

bool q_is_irreducible(const PolyOf<Rationals>& f);

// irreducibility over F_q (Rabin's test)
inline bool fq_is_irreducible(const Fq& F, const FqPoly& f) {
  long n = polyops::degree<Fq>(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  FqPoly x{F.zero(), F.one()};
  mpz_class qn;
  mpz_ui_pow_ui(qn.get_mpz_t(), F.q, static_cast<unsigned long>(n));
  if (polyops::powmod(F, x, qn, f) != polyops::mod(F, x, f)) return false;
  for (long l = 2; l <= n; ++l) {
    if (!is_prime_u64(static_cast<uint64_t>(l)) || n % l != 0) continue;
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), F.q, static_cast<unsigned long>(n / l));
    auto diff = polyops::sub(F, polyops::powmod(F, x, e, f), x);
    if (polyops::degree<Fq>(polyops::gcd(F, diff, f)) != 0) return false;
  }
  return true;
}

}  // namespace workbench
