#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "workbench/matrix.hpp"
#include "workbench/rings.hpp"
#include "workbench/smith.hpp"

using namespace workbench;

namespace {

template <typename R>
Matrix<typename R::Elem> from_ints(const R& ring, size_t rows, size_t cols,
                                   std::initializer_list<long> vals) {
  Matrix<typename R::Elem> m(rows, cols, ring.zero());
  size_t k = 0;
  for (long v : vals) m.a[k++] = ring.from_int(v);
  return m;
}

template <typename R>
Matrix<typename R::Elem> random_matrix(const R& ring, Rng& rng, size_t rows, size_t cols) {
  Matrix<typename R::Elem> m(rows, cols, ring.zero());
  for (auto& x : m.a) x = ring.random(rng);
  return m;
}

// random unimodular matrix over a local ring: product of elementary
// operations with unit pivots
template <typename R>
Matrix<typename R::Elem> random_unimodular(const R& ring, Rng& rng, size_t n) {
  auto m = identity(ring, n);
  for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
    size_t i = rng.below(n), j = rng.below(n);
    if (i == j) continue;
    auto c = ring.from_int(static_cast<long>(rng.below(5)) - 2);
    for (size_t k = 0; k < n; ++k) m.at(i, k) = ring.add(m.at(i, k), ring.mul(c, m.at(j, k)));
  }
  return m;
}

}  // namespace

TEST_CASE("rref rank and kernel over fields") {
  Fq F2(2);
  auto A = from_ints(F2, 2, 2, {1, 1, 1, 1});
  auto rr = rref(F2, A);
  CHECK(rr.rank == 1);
  auto K = kernel_basis(F2, A);
  CHECK(K.cols == 1);
  CHECK(F2.eq(K.at(0, 0), F2.one()));
  CHECK(F2.eq(K.at(1, 0), F2.one()));

  Fq F5(5);
  Matrix<Fq::Elem> Z(3, 3, F5.zero());
  CHECK(mat_rank(F5, Z) == 0);
  CHECK(kernel_basis(F5, Z).cols == 3);

  // [[1, T], [T, T^2]] over truncated F_3((T)) has rank 1
  Trunc L(3, 1, 8, true);
  Matrix<TruncEl> B(2, 2, L.zero());
  B.at(0, 0) = L.one();
  B.at(0, 1) = L.monomial(1);
  B.at(1, 0) = L.monomial(1);
  B.at(1, 1) = L.monomial(2);
  CHECK(mat_rank(L, B) == 1);
  auto KB = kernel_basis(L, B);
  CHECK(KB.cols == 1);
  auto prod = mat_mul(L, B, KB);
  CHECK(is_zero_matrix(L, prod));
}

TEST_CASE("kernel satisfies A k = 0 exactly on random instances") {
  Fq F9(3, 2);
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    auto A = random_matrix(F9, rng, 4 + rng.below(4), 4 + rng.below(4));
    auto K = kernel_basis(F9, A);
    CHECK(A.cols == mat_rank(F9, A) + K.cols);
    if (K.cols > 0) CHECK(is_zero_matrix(F9, mat_mul(F9, A, K)));
  }
}

TEST_CASE("smith normal form examples") {
  PLocal R3(3);
  auto A = from_ints(R3, 2, 2, {3, 0, 0, 1});
  auto sf = smith_normal_form(R3, A);
  CHECK(sf.diag == std::vector<long>{0, 1});
  CHECK(smith_verify(R3, A, sf));

  PLocal R2(2);
  auto B = from_ints(R2, 2, 2, {2, 4, 4, 8});
  auto sfB = smith_normal_form(R2, B);
  CHECK(sfB.diag[0] == 1);
  CHECK(sfB.diag[1] == kValInf);
  CHECK(sfB.rank == 1);
  CHECK(smith_verify(R2, B, sfB));

  PLocal R5(5);
  auto C = from_ints(R5, 2, 2, {1, 2, 3, 4});  // det = -2, a 5-adic unit
  auto sfC = smith_normal_form(R5, C);
  CHECK(sfC.diag == std::vector<long>{0, 0});
  CHECK(smith_verify(R5, C, sfC));
}

TEST_CASE("smith transforms verify and valuations are unimodular-invariant") {
  Rng rng(17);
  PLocal R2(2);
  Zpa Z38(3, 8);
  for (int t = 0; t < 10; ++t) {
    auto A = random_matrix(R2, rng, 4, 5);
    auto sf = smith_normal_form(R2, A);
    CHECK(smith_verify(R2, A, sf));
    for (int u = 0; u < 20; ++u) {
      auto U = random_unimodular(R2, rng, 4);
      auto V = random_unimodular(R2, rng, 5);
      auto A2 = mat_mul(R2, mat_mul(R2, U, A), V);
      CHECK(smith_normal_form(R2, A2).diag == sf.diag);
    }
  }
  for (int t = 0; t < 10; ++t) {
    Matrix<Zpa::Elem> A(3, 3, Z38.zero());
    for (auto& x : A.a) x = Z38.random(rng);
    auto sf = smith_normal_form(Z38, A);
    CHECK(smith_verify(Z38, A, sf));
    for (int u = 0; u < 5; ++u) {
      auto U = random_unimodular(Z38, rng, 3);
      auto A2 = mat_mul(Z38, U, A);
      CHECK(smith_normal_form(Z38, A2).diag == sf.diag);
    }
  }
  // truncated T-adic coefficients
  Trunc T(2, 1, 10);
  for (int t = 0; t < 10; ++t) {
    Matrix<TruncEl> A(3, 3, T.zero());
    for (auto& x : A.a) x = T.random(rng);
    auto sf = smith_normal_form(T, A);
    CHECK(smith_verify(T, A, sf));
  }
}

TEST_CASE("rank over F_p equals unit-valuation pivot count of Z_(p) smith form") {
  Rng rng(23);
  PLocal R3(3);
  Fq F3(3);
  for (int t = 0; t < 100; ++t) {
    size_t n = 2 + rng.below(4), m = 2 + rng.below(4);
    Matrix<mpq_class> A(n, m, R3.zero());
    for (auto& x : A.a) x = mpq_class(static_cast<long>(rng.below(19)) - 9);
    auto sf = smith_normal_form(R3, A);
    size_t units = 0;
    for (long v : sf.diag)
      if (v == 0) ++units;
    Matrix<Fq::Elem> Abar(n, m, F3.zero());
    for (size_t i = 0; i < A.a.size(); ++i) Abar.a[i] = R3.reduce_mod_p(A.a[i]);
    CHECK(mat_rank(F3, Abar) == units);
  }
}

TEST_CASE("solve and membership") {
  Rationals Q;
  auto I2 = identity(Q, 2);
  auto x = solve_field(Q, I2, {mpq_class(3), mpq_class(4)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 3);
  CHECK((*x)[1] == 4);

  PLocal R2(2);
  Matrix<mpq_class> A(1, 1, R2.from_int(2));
  CHECK_FALSE(solve_local(R2, A, {R2.one()}).has_value());  // 1/2 not in Z_(2)

  PLocal R3(3);
  auto s = solve_local(R3, A, {R3.one()});
  REQUIRE(s.has_value());
  CHECK((*s)[0] == mpq_class(1, 2));

  // inconsistent over a field
  Fq F2(2);
  auto B = from_ints(F2, 2, 1, {0, 0});
  CHECK_FALSE(solve_field(F2, B, {F2.one(), F2.zero()}).has_value());

  // local solve over Z/p^a with zero diagonal constraint
  Zpa Z8(2, 3);
  Matrix<Zpa::Elem> C(1, 1, Z8.from_int(4));
  CHECK(solve_local(Z8, C, {Z8.from_int(4)}).has_value());
  CHECK_FALSE(solve_local(Z8, C, {Z8.from_int(2)}).has_value());
}

TEST_CASE("parallel kernels match the serial reference bitwise") {
  Rng rng(31);
  Fq F4(2, 2);
  auto A = random_matrix(F4, rng, 60, 60);
  auto B = random_matrix(F4, rng, 60, 60);
  CHECK(mat_mul_serial(F4, A, B) == mat_mul_parallel(F4, A, B));
  auto r1 = rref_serial(F4, A), r2 = rref_parallel(F4, A);
  CHECK(r1.rref == r2.rref);
  CHECK(r1.rank == r2.rank);

  Zpa Z(3, 8);
  Matrix<Zpa::Elem> C(40, 40, Z.zero());
  for (auto& x : C.a) x = Z.random(rng);
  Matrix<Zpa::Elem> D(40, 40, Z.zero());
  for (auto& x : D.a) x = Z.random(rng);
  CHECK(mat_mul_serial(Z, C, D) == mat_mul_parallel(Z, C, D));
}
