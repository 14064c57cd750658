#pragma once

#include <optional>
#include <vector>

#include "workbench/error.hpp"
#include "workbench/matrix.hpp"
#include "workbench/rings.hpp"

namespace workbench {

// Smith normal form over a local principal ring with a designated uniformizer
// (Z_(p), Z/p^a, truncated T-adic series).  left * A * right is diagonal with
// entries uniformizer^diag[i]; diag is non-decreasing; transforms are
// unimodular.  Valuations at or above val_cap() mean "zero at this precision"
// (exactly zero over Z_(p), where the cap is infinite).
template <typename R>
struct SmithForm {
  std::vector<long> diag;  // length min(rows, cols), non-decreasing
  Matrix<typename R::Elem> left, right;
  long cap = kValInf;
  size_t rank = 0;  // diagonal entries with valuation < cap
};

template <typename R>
SmithForm<R> smith_normal_form(const R& ring, Matrix<typename R::Elem> w) {
  SmithForm<R> sf;
  sf.cap = ring.val_cap();
  size_t rows = w.rows, cols = w.cols;
  sf.left = identity(ring, rows);
  sf.right = identity(ring, cols);
  size_t n = std::min(rows, cols);
  sf.diag.assign(n, sf.cap);

  for (size_t k = 0; k < n; ++k) {
    // pivot: minimal valuation in the trailing submatrix, ties to the
    // smallest (row, col) in row-major order
    long best = kValInf;
    size_t bi = rows, bj = cols;
    for (size_t i = k; i < rows; ++i) {
      for (size_t j = k; j < cols; ++j) {
        if (ring.is_zero(w.at(i, j))) continue;
        long v = ring.val(w.at(i, j));
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == rows) break;  // trailing block is zero at this precision
    if (bi != k) {
      for (size_t j = 0; j < cols; ++j) std::swap(w.at(bi, j), w.at(k, j));
      for (size_t j = 0; j < rows; ++j) std::swap(sf.left.at(bi, j), sf.left.at(k, j));
    }
    if (bj != k) {
      for (size_t i = 0; i < rows; ++i) std::swap(w.at(i, bj), w.at(i, k));
      for (size_t i = 0; i < cols; ++i) std::swap(sf.right.at(i, bj), sf.right.at(i, k));
    }

    // scale the pivot row so the pivot becomes uniformizer^best
    auto unit = ring.div_exact(w.at(k, k), ring.pow_uniformizer(best));
    auto unit_inv = ring.inv(unit);
    for (size_t j = 0; j < cols; ++j) w.at(k, j) = ring.mul(unit_inv, w.at(k, j));
    for (size_t j = 0; j < rows; ++j) sf.left.at(k, j) = ring.mul(unit_inv, sf.left.at(k, j));

    // clear the pivot column, then the pivot row (exact divisions: the pivot
    // has minimal valuation in the submatrix)
    for (size_t i = 0; i < rows; ++i) {
      if (i == k || ring.is_zero(w.at(i, k))) continue;
      auto qf = ring.div_exact(w.at(i, k), w.at(k, k));
      for (size_t j = 0; j < cols; ++j) w.at(i, j) = ring.sub(w.at(i, j), ring.mul(qf, w.at(k, j)));
      for (size_t j = 0; j < rows; ++j)
        sf.left.at(i, j) = ring.sub(sf.left.at(i, j), ring.mul(qf, sf.left.at(k, j)));
    }
    for (size_t j = 0; j < cols; ++j) {
      if (j == k || ring.is_zero(w.at(k, j))) continue;
      auto qf = ring.div_exact(w.at(k, j), w.at(k, k));
      for (size_t i = 0; i < rows; ++i) w.at(i, j) = ring.sub(w.at(i, j), ring.mul(qf, w.at(i, k)));
      for (size_t i = 0; i < cols; ++i)
        sf.right.at(i, j) = ring.sub(sf.right.at(i, j), ring.mul(qf, sf.right.at(i, k)));
    }
    sf.diag[k] = best;
  }
  for (long v : sf.diag)
    if (v < sf.cap) ++sf.rank;
  return sf;
}

// the diagonal matrix claimed by a SmithForm
template <typename R>
Matrix<typename R::Elem> smith_diagonal(const R& ring, const SmithForm<R>& sf, size_t rows,
                                        size_t cols) {
  Matrix<typename R::Elem> d(rows, cols, ring.zero());
  for (size_t i = 0; i < sf.diag.size(); ++i)
    if (sf.diag[i] < sf.cap) d.at(i, i) = ring.pow_uniformizer(sf.diag[i]);
  return d;
}

template <typename R>
bool smith_verify(const R& ring, const Matrix<typename R::Elem>& a, const SmithForm<R>& sf) {
  auto lhs = mat_mul(ring, mat_mul(ring, sf.left, a), sf.right);
  return lhs == smith_diagonal(ring, sf, a.rows, a.cols);
}

// solve A x = b over the local ring via SNF; nullopt when no solution exists
// at the working precision
template <typename R>
std::optional<std::vector<typename R::Elem>> solve_local(const R& ring,
                                                         const Matrix<typename R::Elem>& A,
                                                         const std::vector<typename R::Elem>& b) {
  require(A.rows == b.size(), errc::context_mismatch, "shape mismatch in solve_local");
  auto sf = smith_normal_form(ring, A);
  auto c = mat_vec(ring, sf.left, b);
  std::vector<typename R::Elem> y(A.cols, ring.zero());
  for (size_t i = 0; i < A.rows; ++i) {
    if (i < sf.diag.size() && sf.diag[i] < sf.cap) {
      if (ring.is_zero(c[i])) continue;
      if (ring.val(c[i]) < sf.diag[i]) return std::nullopt;
      y[i] = ring.div_exact(c[i], ring.pow_uniformizer(sf.diag[i]));
    } else {
      if (!ring.is_zero(c[i])) return std::nullopt;
    }
  }
  return mat_vec(ring, sf.right, y);
}

}  // namespace workbench
