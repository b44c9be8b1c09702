#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "pencilform/gf.hpp"

namespace pencilform {

using Vec = std::vector<Residue>;

/// Dense row-major matrix over F_p. Entries are canonical residues in [0, p).
class Matrix {
 public:
  Matrix(Prime p, std::size_t rows, std::size_t cols);
  /// Entries are reduced mod p, so negative literals are fine.
  Matrix(Prime p, std::initializer_list<std::initializer_list<std::int64_t>> rows);
  Matrix(Prime p, const std::vector<std::vector<std::int64_t>>& rows);

  static Matrix identity(Prime p, std::size_t n);
  static Matrix diagonal(Prime p, const Vec& d);

  [[nodiscard]] const Prime& modulus() const noexcept { return p_; }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
  [[nodiscard]] bool is_zero() const noexcept;

  [[nodiscard]] Residue operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }
  /// Caller keeps the value in [0, p).
  [[nodiscard]] Residue& operator()(std::size_t r, std::size_t c) noexcept {
    return data_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, std::int64_t v) { (*this)(r, c) = p_.reduce(v); }

  [[nodiscard]] const Vec& data() const noexcept { return data_; }

  [[nodiscard]] Matrix transpose() const;
  [[nodiscard]] Matrix scaled(Residue s) const;
  [[nodiscard]] Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  [[nodiscard]] Vec apply(const Vec& v) const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  [[nodiscard]] Matrix operator-() const { return scaled(p_.neg(1)); }
  friend bool operator==(const Matrix&, const Matrix&) = default;

  [[nodiscard]] std::string to_string() const;

 private:
  Prime p_;
  std::size_t rows_;
  std::size_t cols_;
  Vec data_;
};

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m);
[[nodiscard]] std::size_t rank(const Matrix& m);
/// Basis of {v : m v = 0}; dimension is cols - rank.
[[nodiscard]] std::vector<Vec> kernel(const Matrix& m);
[[nodiscard]] Residue det(const Matrix& m);
/// One solution of m x = b, or nullopt if inconsistent.
[[nodiscard]] std::optional<Vec> solve(const Matrix& m, const Vec& b);

/// An invertible square matrix together with its inverse.
class Invertible {
 public:
  /// Throws SingularMatrixError (or ContractError for non-square input).
  explicit Invertible(Matrix m);

  static Invertible identity(Prime p, std::size_t n) {
    return Invertible(Matrix::identity(p, n));
  }

  [[nodiscard]] const Matrix& matrix() const noexcept { return m_; }
  [[nodiscard]] const Matrix& inverse() const noexcept { return inv_; }
  [[nodiscard]] std::size_t size() const noexcept { return m_.rows(); }
  [[nodiscard]] Invertible inverted() const { return Invertible(inv_, m_); }

  friend Invertible operator*(const Invertible& a, const Invertible& b) {
    return Invertible(a.m_ * b.m_, b.inv_ * a.inv_);
  }
  friend bool operator==(const Invertible& a, const Invertible& b) { return a.m_ == b.m_; }

 private:
  Invertible(Matrix m, Matrix inv) : m_(std::move(m)), inv_(std::move(inv)) {}
  Matrix m_;
  Matrix inv_;
};

[[nodiscard]] Invertible inverse(const Matrix& m);

}  // namespace pencilform
