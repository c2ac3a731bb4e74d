// Exact integer matrices: Smith normal form, kernels, cokernels, solving.
// Everything here is arbitrary-precision; no floating point.
#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>

#include "toricint/numeric.hpp"

namespace toricint {

class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}
  IntMat(std::size_t rows, std::size_t cols, std::vector<Int> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_) throw ArgumentError("entry count mismatch");
  }
  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMat from_rows(const std::vector<IntVec>& rows) {
    if (rows.empty()) return IntMat(0, 0);
    IntMat m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw ArgumentError("ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const IntMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  IntMat operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw ArgumentError("dimension mismatch");
    IntMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& aik = (*this)(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

  IntVec apply(const IntVec& v) const {
    if (v.size() != cols_) throw ArgumentError("dimension mismatch");
    IntVec r(rows_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  IntMat transposed() const {
    IntMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntVec row(std::size_t i) const {
    IntVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }
  IntVec col(std::size_t j) const {
    IntVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Int> a_;
};

// U*A*V = D with U, V unimodular and D diagonal with d1 | d2 | ... >= 0.
struct SmithDecomposition {
  IntMat U, D, V;
  std::vector<Int> invariant_factors() const {
    std::vector<Int> f;
    const std::size_t n = std::min(D.rows(), D.cols());
    for (std::size_t i = 0; i < n; ++i)
      if (D(i, i) != 0) f.push_back(D(i, i));
    return f;
  }
  std::size_t rank() const { return invariant_factors().size(); }
};

namespace detail {

inline void swap_rows(IntMat& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(i, k), m(j, k));
}
inline void swap_cols(IntMat& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < m.rows(); ++k) std::swap(m(k, i), m(k, j));
}
// row_i -= q * row_j
inline void add_row(IntMat& m, std::size_t i, std::size_t j, const Int& q) {
  if (q == 0) return;
  for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) -= q * m(j, k);
}
inline void add_col(IntMat& m, std::size_t i, std::size_t j, const Int& q) {
  if (q == 0) return;
  for (std::size_t k = 0; k < m.rows(); ++k) m(k, i) -= q * m(k, j);
}
inline void negate_row(IntMat& m, std::size_t i) {
  for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = -m(i, k);
}

}  // namespace detail

// Pivot rule: smallest nonzero absolute value in the trailing submatrix,
// ties broken by lowest (row, col) index, so U and V are reproducible.
inline SmithDecomposition smith_normal_form(const IntMat& A) {
  SmithDecomposition s{IntMat::identity(A.rows()), A, IntMat::identity(A.cols())};
  IntMat& D = s.D;
  const std::size_t n = std::min(A.rows(), A.cols());
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t pi = t, pj = t;
      Int best(0);
      for (std::size_t i = t; i < D.rows(); ++i)
        for (std::size_t j = t; j < D.cols(); ++j) {
          if (D(i, j) == 0) continue;
          Int v = abs(D(i, j));
          if (best == 0 || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) goto done;  // trailing submatrix is zero
      detail::swap_rows(D, t, pi);
      detail::swap_rows(s.U, t, pi);
      detail::swap_cols(D, t, pj);
      detail::swap_cols(s.V, t, pj);

      bool reduced = true;
      for (std::size_t i = t + 1; i < D.rows(); ++i) {
        if (D(i, t) == 0) continue;
        Int q = D(i, t) / D(t, t);
        detail::add_row(D, i, t, q);
        detail::add_row(s.U, i, t, q);
        if (D(i, t) != 0) reduced = false;
      }
      for (std::size_t j = t + 1; j < D.cols(); ++j) {
        if (D(t, j) == 0) continue;
        Int q = D(t, j) / D(t, t);
        detail::add_col(D, j, t, q);
        detail::add_col(s.V, j, t, q);
        if (D(t, j) != 0) reduced = false;
      }
      if (!reduced) continue;

      // Divisibility fix-up: d_t must divide the whole trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < D.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < D.cols() && divides; ++j)
          if (D(i, j) % D(t, t) != 0) {
            detail::add_row(D, t, i, Int(-1));  // row_t += row_i
            detail::add_row(s.U, t, i, Int(-1));
            divides = false;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      detail::negate_row(D, t);
      detail::negate_row(s.U, t);
    }
  }
done:
  return s;
}

// Lattice basis of ker(A) within Z^cols: the columns of V beyond rank(A).
// V is unimodular, so these columns span the full (saturated) kernel.
inline std::vector<IntVec> kernel_basis(const IntMat& A) {
  SmithDecomposition s = smith_normal_form(A);
  const std::size_t r = s.rank();
  std::vector<IntVec> basis;
  for (std::size_t j = r; j < A.cols(); ++j) basis.push_back(s.V.col(j));
  return basis;
}

// Z^rows / im(A) for A viewed as a map Z^cols -> Z^rows (column convention).
struct QuotientLattice {
  std::size_t ambient = 0;
  std::size_t free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, each dividing the next
  // free_rank x ambient integer matrix; sends an ambient vector to its
  // coordinates in the chosen basis of the free part.
  IntMat projection;
};

inline QuotientLattice cokernel(const IntMat& A) {
  SmithDecomposition s = smith_normal_form(A);
  QuotientLattice q;
  q.ambient = A.rows();
  const std::size_t r = s.rank();
  q.free_rank = A.rows() - r;
  for (const Int& d : s.invariant_factors())
    if (d > 1) q.torsion.push_back(d);
  q.projection = IntMat(q.free_rank, A.rows());
  for (std::size_t i = 0; i < q.free_rank; ++i)
    for (std::size_t j = 0; j < A.rows(); ++j) q.projection(i, j) = s.U(r + i, j);
  return q;
}

// One integer solution x of A x = b, if any.
inline bool solve_integer(const IntMat& A, const IntVec& b, IntVec& x) {
  if (b.size() != A.rows()) throw ArgumentError("dimension mismatch");
  SmithDecomposition s = smith_normal_form(A);
  const std::size_t r = s.rank();
  IntVec c = s.U.apply(b);  // solve D y = U b, then x = V y
  IntVec y(A.cols(), Int(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < r) {
      if (c[i] % s.D(i, i) != 0) return false;
      y[i] = c[i] / s.D(i, i);
    } else if (c[i] != 0) {
      return false;
    }
  }
  x = s.V.apply(y);
  return true;
}

inline std::size_t rank_of(const IntMat& A) { return smith_normal_form(A).rank(); }

// T with T * from = to, T unimodular — i.e. the two full-row-rank matrices
// present the same row lattice in different bases. Returns false if none.
inline bool unimodular_row_transform(const IntMat& from, const IntMat& to, IntMat& T) {
  if (from.rows() != to.rows() || from.cols() != to.cols()) return false;
  const std::size_t k = from.rows();
  // Solve row-wise: to_row_i = t_i * from  <=>  from^T * t_i^T = to_row_i^T.
  IntMat ft = from.transposed();
  IntMat t(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    IntVec ti;
    if (!solve_integer(ft, to.row(i), ti)) return false;
    for (std::size_t j = 0; j < k; ++j) t(i, j) = ti[j];
  }
  if (!(t * from == to)) return false;
  // Unimodularity: the inverse transform must exist over Z as well.
  IntMat tinv(k, k);
  IntMat tt = t.transposed();
  for (std::size_t i = 0; i < k; ++i) {
    IntVec e(k, Int(0));
    e[i] = 1;
    IntVec col;
    if (!solve_integer(tt, e, col)) return false;
    for (std::size_t j = 0; j < k; ++j) tinv(i, j) = col[j];
  }
  T = t;
  return true;
}

}  // namespace toricint
