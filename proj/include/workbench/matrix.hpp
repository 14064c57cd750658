#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "workbench/error.hpp"

namespace workbench {

// Global switch for the OpenMP kernels.  The parallel paths are bitwise
// deterministic (independent row updates, no cross-thread reductions), so
// flipping this never changes results, only timing.
namespace par {
inline bool& enabled_ref() {
  static bool enabled = true;
  return enabled;
}
inline void set_enabled(bool b) { enabled_ref() = b; }
inline bool enabled() { return enabled_ref(); }
inline constexpr size_t kMinWork = 1 << 14;  // skip OpenMP below this many cell-ops
}  // namespace par

template <typename E>
struct Matrix {
  size_t rows = 0, cols = 0;
  std::vector<E> a;

  Matrix() = default;
  Matrix(size_t r, size_t c, const E& fill = E{}) : rows(r), cols(c), a(r * c, fill) {}

  E& at(size_t i, size_t j) { return a[i * cols + j]; }
  const E& at(size_t i, size_t j) const { return a[i * cols + j]; }

  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  Matrix transposed() const {
    Matrix t(cols, rows);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }
};

template <typename R>
Matrix<typename R::Elem> identity(const R& ring, size_t n) {
  Matrix<typename R::Elem> m(n, n, ring.zero());
  for (size_t i = 0; i < n; ++i) m.at(i, i) = ring.one();
  return m;
}

template <typename R>
bool is_zero_matrix(const R& ring, const Matrix<typename R::Elem>& m) {
  for (const auto& x : m.a)
    if (!ring.is_zero(x)) return false;
  return true;
}

template <typename R>
Matrix<typename R::Elem> mat_add(const R& ring, const Matrix<typename R::Elem>& x,
                                 const Matrix<typename R::Elem>& y) {
  require(x.rows == y.rows && x.cols == y.cols, errc::context_mismatch, "shape mismatch in add");
  Matrix<typename R::Elem> r(x.rows, x.cols, ring.zero());
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = ring.add(x.a[i], y.a[i]);
  return r;
}

template <typename R>
Matrix<typename R::Elem> mat_sub(const R& ring, const Matrix<typename R::Elem>& x,
                                 const Matrix<typename R::Elem>& y) {
  require(x.rows == y.rows && x.cols == y.cols, errc::context_mismatch, "shape mismatch in sub");
  Matrix<typename R::Elem> r(x.rows, x.cols, ring.zero());
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = ring.sub(x.a[i], y.a[i]);
  return r;
}

template <typename R>
Matrix<typename R::Elem> mat_scale(const R& ring, const typename R::Elem& c,
                                   const Matrix<typename R::Elem>& x) {
  Matrix<typename R::Elem> r(x.rows, x.cols, ring.zero());
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = ring.mul(c, x.a[i]);
  return r;
}

// ---------------------------------------------------------------------------
// multiplication: serial reference kernel plus an OpenMP row-parallel kernel.
// Both produce identical bits; mat_mul dispatches on size and par::enabled().
// ---------------------------------------------------------------------------

template <typename R>
Matrix<typename R::Elem> mat_mul_serial(const R& ring, const Matrix<typename R::Elem>& x,
                                        const Matrix<typename R::Elem>& y) {
  require(x.cols == y.rows, errc::context_mismatch, "shape mismatch in mul");
  Matrix<typename R::Elem> r(x.rows, y.cols, ring.zero());
  for (size_t i = 0; i < x.rows; ++i) {
    for (size_t k = 0; k < x.cols; ++k) {
      const auto& xv = x.at(i, k);
      if (ring.is_zero(xv)) continue;
      for (size_t j = 0; j < y.cols; ++j)
        r.at(i, j) = ring.add(r.at(i, j), ring.mul(xv, y.at(k, j)));
    }
  }
  return r;
}

template <typename R>
Matrix<typename R::Elem> mat_mul_parallel(const R& ring, const Matrix<typename R::Elem>& x,
                                          const Matrix<typename R::Elem>& y) {
  require(x.cols == y.rows, errc::context_mismatch, "shape mismatch in mul");
  Matrix<typename R::Elem> r(x.rows, y.cols, ring.zero());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long ii = 0; ii < static_cast<long long>(x.rows); ++ii) {
    size_t i = static_cast<size_t>(ii);
    for (size_t k = 0; k < x.cols; ++k) {
      const auto& xv = x.at(i, k);
      if (ring.is_zero(xv)) continue;
      for (size_t j = 0; j < y.cols; ++j)
        r.at(i, j) = ring.add(r.at(i, j), ring.mul(xv, y.at(k, j)));
    }
  }
  return r;
}

template <typename R>
Matrix<typename R::Elem> mat_mul(const R& ring, const Matrix<typename R::Elem>& x,
                                 const Matrix<typename R::Elem>& y) {
  if (par::enabled() && x.rows * x.cols * y.cols >= par::kMinWork)
    return mat_mul_parallel(ring, x, y);
  return mat_mul_serial(ring, x, y);
}

template <typename R>
std::vector<typename R::Elem> mat_vec(const R& ring, const Matrix<typename R::Elem>& x,
                                      const std::vector<typename R::Elem>& v) {
  require(x.cols == v.size(), errc::context_mismatch, "shape mismatch in mat_vec");
  std::vector<typename R::Elem> r(x.rows, ring.zero());
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t k = 0; k < x.cols; ++k)
      if (!ring.is_zero(x.at(i, k))) r[i] = ring.add(r[i], ring.mul(x.at(i, k), v[k]));
  return r;
}

template <typename R>
std::vector<typename R::Elem> vec_mat(const R& ring, const std::vector<typename R::Elem>& v,
                                      const Matrix<typename R::Elem>& x) {
  require(x.rows == v.size(), errc::context_mismatch, "shape mismatch in vec_mat");
  std::vector<typename R::Elem> r(x.cols, ring.zero());
  for (size_t k = 0; k < x.rows; ++k)
    if (!ring.is_zero(v[k]))
      for (size_t j = 0; j < x.cols; ++j) r[j] = ring.add(r[j], ring.mul(v[k], x.at(k, j)));
  return r;
}

// ---------------------------------------------------------------------------
// reduced row echelon form over a field (or the truncated Laurent field).
// Deterministic pivoting: first column with a nonzero entry, topmost row.
// ---------------------------------------------------------------------------

template <typename R>
struct RrefResult {
  size_t rank = 0;
  Matrix<typename R::Elem> rref;
  std::vector<size_t> pivot_cols;
};

namespace detail {

template <typename R>
void eliminate_rows_serial(const R& ring, Matrix<typename R::Elem>& m, size_t pivot_row,
                           size_t col) {
  for (size_t i = 0; i < m.rows; ++i) {
    if (i == pivot_row || ring.is_zero(m.at(i, col))) continue;
    auto f = m.at(i, col);
    for (size_t j = 0; j < m.cols; ++j)
      m.at(i, j) = ring.sub(m.at(i, j), ring.mul(f, m.at(pivot_row, j)));
  }
}

template <typename R>
void eliminate_rows_parallel(const R& ring, Matrix<typename R::Elem>& m, size_t pivot_row,
                             size_t col) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long ii = 0; ii < static_cast<long long>(m.rows); ++ii) {
    size_t i = static_cast<size_t>(ii);
    if (i == pivot_row || ring.is_zero(m.at(i, col))) continue;
    auto f = m.at(i, col);
    for (size_t j = 0; j < m.cols; ++j)
      m.at(i, j) = ring.sub(m.at(i, j), ring.mul(f, m.at(pivot_row, j)));
  }
}

}  // namespace detail

template <typename R>
RrefResult<R> rref_impl(const R& ring, Matrix<typename R::Elem> m, bool parallel) {
  RrefResult<R> res;
  size_t r = 0;
  for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
    size_t pr = m.rows;
    for (size_t i = r; i < m.rows; ++i) {
      if (!ring.is_zero(m.at(i, c))) {
        pr = i;
        break;
      }
    }
    if (pr == m.rows) continue;
    if (pr != r)
      for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
    auto piv_inv = ring.inv(m.at(r, c));
    for (size_t j = 0; j < m.cols; ++j) m.at(r, j) = ring.mul(piv_inv, m.at(r, j));
    if (parallel)
      detail::eliminate_rows_parallel(ring, m, r, c);
    else
      detail::eliminate_rows_serial(ring, m, r, c);
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  res.rref = std::move(m);
  return res;
}

template <typename R>
RrefResult<R> rref_serial(const R& ring, Matrix<typename R::Elem> m) {
  return rref_impl(ring, std::move(m), false);
}
template <typename R>
RrefResult<R> rref_parallel(const R& ring, Matrix<typename R::Elem> m) {
  return rref_impl(ring, std::move(m), true);
}
template <typename R>
RrefResult<R> rref(const R& ring, Matrix<typename R::Elem> m) {
  bool parallel = par::enabled() && m.rows * m.cols >= par::kMinWork / 8;
  return rref_impl(ring, std::move(m), parallel);
}

template <typename R>
size_t mat_rank(const R& ring, const Matrix<typename R::Elem>& m) {
  return rref(ring, m).rank;
}

// right kernel basis, one column per free variable, so A * k = 0 exactly
template <typename R>
Matrix<typename R::Elem> kernel_basis(const R& ring, const Matrix<typename R::Elem>& m) {
  auto rr = rref(ring, m);
  std::vector<bool> is_pivot(m.cols, false);
  for (size_t c : rr.pivot_cols) is_pivot[c] = true;
  std::vector<size_t> free_cols;
  for (size_t c = 0; c < m.cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<typename R::Elem> k(m.cols, free_cols.size(), ring.zero());
  for (size_t f = 0; f < free_cols.size(); ++f) {
    size_t fc = free_cols[f];
    k.at(fc, f) = ring.one();
    for (size_t r = 0; r < rr.rank; ++r) k.at(rr.pivot_cols[r], f) = ring.neg(rr.rref.at(r, fc));
  }
  return k;
}

// solve A x = b over a field; nullopt when inconsistent
template <typename R>
std::optional<std::vector<typename R::Elem>> solve_field(const R& ring,
                                                         const Matrix<typename R::Elem>& A,
                                                         const std::vector<typename R::Elem>& b) {
  require(A.rows == b.size(), errc::context_mismatch, "shape mismatch in solve");
  Matrix<typename R::Elem> aug(A.rows, A.cols + 1, ring.zero());
  for (size_t i = 0; i < A.rows; ++i) {
    for (size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = b[i];
  }
  auto rr = rref(ring, std::move(aug));
  std::vector<typename R::Elem> x(A.cols, ring.zero());
  for (size_t r = 0; r < rr.rank; ++r) {
    if (rr.pivot_cols[r] == A.cols) return std::nullopt;  // pivot in the b column
    x[rr.pivot_cols[r]] = rr.rref.at(r, A.cols);
  }
  return x;
}

template <typename R>
std::optional<Matrix<typename R::Elem>> try_inverse(const R& ring,
                                                    const Matrix<typename R::Elem>& A) {
  require(A.rows == A.cols, errc::bad_input, "inverse of non-square matrix");
  size_t n = A.rows;
  Matrix<typename R::Elem> aug(n, 2 * n, ring.zero());
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, n + i) = ring.one();
  }
  auto rr = rref(ring, std::move(aug));
  if (rr.rank < n || rr.pivot_cols[n - 1] >= n) return std::nullopt;
  Matrix<typename R::Elem> inv(n, n, ring.zero());
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv.at(i, j) = rr.rref.at(i, n + j);
  return inv;
}

template <typename R>
Matrix<typename R::Elem> inverse(const R& ring, const Matrix<typename R::Elem>& A) {
  auto inv = try_inverse(ring, A);
  require(inv.has_value(), errc::non_unit_division, "matrix not invertible");
  return *inv;
}

// basis of the row space as the nonzero rows of the rref
template <typename R>
Matrix<typename R::Elem> row_space_basis(const R& ring, const Matrix<typename R::Elem>& m) {
  auto rr = rref(ring, m);
  Matrix<typename R::Elem> b(rr.rank, m.cols, ring.zero());
  for (size_t i = 0; i < rr.rank; ++i)
    for (size_t j = 0; j < m.cols; ++j) b.at(i, j) = rr.rref.at(i, j);
  return b;
}

// coordinates of v in the row space of a rref basis; nullopt if outside
template <typename R>
std::optional<std::vector<typename R::Elem>> coords_in_rref(
    const R& ring, const RrefResult<R>& basis, const std::vector<typename R::Elem>& v) {
  std::vector<typename R::Elem> co(basis.rank, ring.zero());
  std::vector<typename R::Elem> rem = v;
  for (size_t r = 0; r < basis.rank; ++r) {
    size_t pc = basis.pivot_cols[r];
    if (ring.is_zero(rem[pc])) continue;
    auto f = rem[pc];
    co[r] = f;
    for (size_t j = 0; j < v.size(); ++j) rem[j] = ring.sub(rem[j], ring.mul(f, basis.rref.at(r, j)));
  }
  for (const auto& x : rem)
    if (!ring.is_zero(x)) return std::nullopt;
  return co;
}

}  // namespace workbench
