#ifndef MLOOP_LINALG_HPP
#define MLOOP_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "mloop/cyclotomic.hpp"
#include "mloop/errors.hpp"

namespace mloop {

/// Small dense matrix over an exact field (Rational or Cyclo). Everything
/// here is fraction-free-honest Gaussian elimination at desk scale; no
/// pivoting heuristics are needed because arithmetic is exact.
template <typename T>
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product shapes");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == T(0)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const T& b = o(k, j);
          if (!(b == T(0))) r(i, j) += a * b;
        }
      }
    return r;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (cols_ != v.size()) throw DimensionMismatch("matrix-vector shapes");
    std::vector<T> r(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const T& a = (*this)(i, j);
        if (!(a == T(0))) r[i] += a * v[j];
      }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch("matrix sum shapes");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch("matrix difference shapes");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }

  Matrix scaled(const T& s) const {
    Matrix r = *this;
    for (T& x : r.data_) x *= s;
    return r;
  }

  Matrix transposed() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  bool is_zero() const {
    for (const T& x : data_)
      if (!(x == T(0))) return false;
    return true;
  }

private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

using MatQ = Matrix<Rational>;
using MatC = Matrix<Cyclo>;
using VecC = std::vector<Cyclo>;
using VecQ = std::vector<Rational>;

inline MatC to_cyclo(const MatQ& m) {
  MatC r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Cyclo(m(i, j));
  return r;
}

template <typename T>
std::vector<T>& add_scaled(std::vector<T>& v, const std::vector<T>& w,
                           const T& s) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(w[i] == T(0))) v[i] += w[i] * s;
  return v;
}

template <typename T>
bool is_zero_vector(const std::vector<T>& v) {
  for (const T& x : v)
    if (!(x == T(0))) return false;
  return true;
}

/// Incrementally built reduced row space; the workhorse for rank counting,
/// span membership, and closure computations.
template <typename T>
class Echelon {
public:
  /// Residual of v after elimination against the stored rows.
  std::vector<T> reduce(std::vector<T> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const T& c = v[pivots_[r]];
      if (!(c == T(0))) add_scaled(v, rows_[r], T(0) - c);
    }
    return v;
  }

  /// Inserts v if independent of the current span; returns true when the
  /// rank grew.
  bool insert(std::vector<T> v) {
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < v.size() && v[p] == T(0)) ++p;
    if (p == v.size()) return false;
    T inv = T(1) / v[p];
    for (T& x : v) x *= inv;
    // keep fully reduced: clear column p in existing rows
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const T& c = rows_[r][p];
      if (!(c == T(0))) add_scaled(rows_[r], v, T(0) - c);
    }
    pivots_.push_back(p);
    rows_.push_back(std::move(v));
    return true;
  }

  bool contains(const std::vector<T>& v) const {
    return is_zero_vector(reduce(v));
  }

  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<T>>& rows() const { return rows_; }

private:
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Rank of an exact matrix.
template <typename T>
std::size_t rank(const Matrix<T>& m) {
  Echelon<T> e;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<T> row(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m(i, j);
    e.insert(std::move(row));
  }
  return e.rank();
}

/// Basis of the right nullspace {x : m x = 0}, deterministic: one vector per
/// free column in ascending order, free coordinate set to 1.
template <typename T>
std::vector<std::vector<T>> nullspace(const Matrix<T>& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<T>> a(rows, std::vector<T>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j);

  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == T(0)) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    T inv = T(1) / a[r][c];
    for (T& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const T& f = a[i][c];
      if (!(f == T(0))) add_scaled(a[i], a[r], T(0) - f);
    }
    pivot_cols.push_back(c);
    ++r;
  }

  std::vector<std::vector<T>> basis;
  std::size_t next_pivot = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (next_pivot < pivot_cols.size() && pivot_cols[next_pivot] == c) {
      ++next_pivot;
      continue;
    }
    std::vector<T> v(cols, T(0));
    v[c] = T(1);
    for (std::size_t k = 0; k < pivot_cols.size(); ++k)
      v[pivot_cols[k]] = T(0) - a[k][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of m x = b if consistent.
template <typename T>
std::optional<std::vector<T>> solve(const Matrix<T>& m,
                                    const std::vector<T>& b) {
  if (m.rows() != b.size()) throw DimensionMismatch("solve shapes");
  std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<T>> a(rows, std::vector<T>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j);
    a[i][cols] = b[i];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == T(0)) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    T inv = T(1) / a[r][c];
    for (T& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const T& f = a[i][c];
      if (!(f == T(0))) add_scaled(a[i], a[r], T(0) - f);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!(a[i][cols] == T(0))) return std::nullopt;
  std::vector<T> x(cols, T(0));
  for (std::size_t k = 0; k < pivot_cols.size(); ++k)
    x[pivot_cols[k]] = a[k][cols];
  return x;
}

/// Inverse of a square matrix; throws NotInvertible.
template <typename T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse needs square");
  std::size_t n = m.rows();
  std::vector<std::vector<T>> a(n, std::vector<T>(2 * n, T(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n + i] = T(1);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == T(0)) ++p;
    if (p == n) throw NotInvertible("singular matrix");
    std::swap(a[p], a[c]);
    T inv = T(1) / a[c][c];
    for (T& x : a[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      const T& f = a[i][c];
      if (!(f == T(0))) add_scaled(a[i], a[c], T(0) - f);
    }
  }
  Matrix<T> r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = a[i][n + j];
  return r;
}

/// Kronecker product, row-major index convention: row (i1, i2) of the result
/// is i1 * b.rows() + i2.
template <typename T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const T& s = a(i1, j1);
      if (s == T(0)) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
          r(i1 * b.rows() + i2, j1 * b.cols() + j2) = s * b(i2, j2);
    }
  return r;
}

}  // namespace mloop

#endif
