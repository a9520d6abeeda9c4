#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "quivlat/error.hpp"
#include "quivlat/ring.hpp"

namespace quivlat {

/// Dense row-major matrix with exact entries over a Ring. Empty shapes
/// (0 x k, k x 0) are valid and common: zero-dimensional vertices produce them.
class Matrix {
 public:
  Matrix() : ring_(Ring::integers()) {}
  Matrix(Ring ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, ring_.zero()) {}

  static Matrix identity(const Ring& ring, std::size_t n) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
    return m;
  }

  /// Row-major integer literal, reduced into the ring.
  static Matrix from_ints(const Ring& ring, std::size_t rows, std::size_t cols,
                          std::initializer_list<long> entries) {
    if (entries.size() != rows * cols)
      fail(ErrorKind::DimensionMismatch, "literal has wrong number of entries");
    Matrix m(ring, rows, cols);
    std::size_t k = 0;
    for (long x : entries) m.data_[k++] = ring.from_int(x);
    return m;
  }

  static Matrix diagonal(const Ring& ring, const std::vector<Elem>& diag) {
    Matrix m(ring, diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!ring_.is_zero(x)) return false;
    return true;
  }

  bool row_is_zero(std::size_t i, std::size_t from = 0) const {
    for (std::size_t j = from; j < cols_; ++j)
      if (!ring_.is_zero((*this)(i, j))) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix operator*(const Matrix& b) const {
    if (cols_ != b.rows_) fail(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
    require_same_ring(b);
    Matrix out(ring_, rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Elem& a = (*this)(i, k);
        if (ring_.is_zero(a)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Elem& y = b(k, j);
          if (ring_.is_zero(y)) continue;
          out(i, j) = ring_.add(out(i, j), ring_.mul(a, y));
        }
      }
    return out;
  }

  Matrix operator+(const Matrix& b) const { return combine(b, false); }
  Matrix operator-(const Matrix& b) const { return combine(b, true); }

  Matrix scaled(const Elem& c) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = ring_.mul(c, x);
    return out;
  }

  Matrix transpose() const {
    Matrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) fail(ErrorKind::DimensionMismatch, "block out of range");
    Matrix out(ring_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  Matrix column(std::size_t j) const { return block(0, rows_, j, 1); }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
      fail(ErrorKind::DimensionMismatch, "set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  static Matrix hstack(const Ring& ring, std::size_t rows, const std::vector<Matrix>& parts) {
    std::size_t cols = 0;
    for (const auto& p : parts) {
      if (p.rows_ != rows) fail(ErrorKind::DimensionMismatch, "hstack row mismatch");
      cols += p.cols_;
    }
    Matrix out(ring, rows, cols);
    std::size_t c = 0;
    for (const auto& p : parts) {
      out.set_block(0, c, p);
      c += p.cols_;
    }
    return out;
  }

  static Matrix vstack(const Ring& ring, std::size_t cols, const std::vector<Matrix>& parts) {
    std::size_t rows = 0;
    for (const auto& p : parts) {
      if (p.cols_ != cols) fail(ErrorKind::DimensionMismatch, "vstack column mismatch");
      rows += p.rows_;
    }
    Matrix out(ring, rows, cols);
    std::size_t r = 0;
    for (const auto& p : parts) {
      out.set_block(r, 0, p);
      r += p.rows_;
    }
    return out;
  }

  static Matrix block_diagonal(const Ring& ring, const std::vector<Matrix>& parts) {
    std::size_t rows = 0, cols = 0;
    for (const auto& p : parts) {
      rows += p.rows_;
      cols += p.cols_;
    }
    Matrix out(ring, rows, cols);
    std::size_t r = 0, c = 0;
    for (const auto& p : parts) {
      out.set_block(r, c, p);
      r += p.rows_;
      c += p.cols_;
    }
    return out;
  }

  /// Appends a zero row (used when echelon forms need room for annihilator rows).
  void append_zero_row() {
    data_.resize(data_.size() + cols_, ring_.zero());
    ++rows_;
  }

  // ---- elementary operations (all invertible) -------------------------------

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }

  /// row_i += q * row_j
  void add_row_multiple(std::size_t i, std::size_t j, const Elem& q) {
    if (ring_.is_zero(q)) return;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Elem& y = (*this)(j, c);
      if (!ring_.is_zero(y)) (*this)(i, c) = ring_.add((*this)(i, c), ring_.mul(q, y));
    }
  }

  /// col_i += q * col_j
  void add_col_multiple(std::size_t i, std::size_t j, const Elem& q) {
    if (ring_.is_zero(q)) return;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Elem& y = (*this)(r, j);
      if (!ring_.is_zero(y)) (*this)(r, i) = ring_.add((*this)(r, i), ring_.mul(q, y));
    }
  }

  void scale_row(std::size_t i, const Elem& u) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = ring_.mul(u, (*this)(i, c));
  }

  void scale_col(std::size_t j, const Elem& u) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, j) = ring_.mul(u, (*this)(r, j));
  }

  /// [row_i; row_j] <- [s t; u v] [row_i; row_j]
  void combine_rows(std::size_t i, std::size_t j, const Gcdex& g) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const Elem x = (*this)(i, c), y = (*this)(j, c);
      if (ring_.is_zero(x) && ring_.is_zero(y)) continue;
      (*this)(i, c) = ring_.add(ring_.mul(g.s, x), ring_.mul(g.t, y));
      (*this)(j, c) = ring_.add(ring_.mul(g.u, x), ring_.mul(g.v, y));
    }
  }

  /// [col_i, col_j] <- [col_i, col_j] [s u; t v]
  void combine_cols(std::size_t i, std::size_t j, const Gcdex& g) {
    for (std::size_t r = 0; r < rows_; ++r) {
      const Elem x = (*this)(r, i), y = (*this)(r, j);
      if (ring_.is_zero(x) && ring_.is_zero(y)) continue;
      (*this)(r, i) = ring_.add(ring_.mul(g.s, x), ring_.mul(g.t, y));
      (*this)(r, j) = ring_.add(ring_.mul(g.u, x), ring_.mul(g.v, y));
    }
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? "; " : "";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? " " : "") + ring_.format((*this)(i, j));
    }
    return s + "]";
  }

 private:
  void require_same_ring(const Matrix& b) const {
    if (!(ring_ == b.ring_))
      fail(ErrorKind::IncompatibleRing, "matrices over " + ring_.spec() + " and " + b.ring_.spec());
  }

  Matrix combine(const Matrix& b, bool subtract) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) fail(ErrorKind::DimensionMismatch, "shape mismatch");
    require_same_ring(b);
    Matrix out(ring_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      out.data_[k] = subtract ? ring_.sub(data_[k], b.data_[k]) : ring_.add(data_[k], b.data_[k]);
    return out;
  }

  Ring ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

}  // namespace quivlat
