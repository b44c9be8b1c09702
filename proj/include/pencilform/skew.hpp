#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pencilform/matrix.hpp"

namespace pencilform {

/// An n-tuple of m x m skew-symmetric matrices over F_p: A^T = -A with a
/// zero diagonal (checked separately, since p = 2 does not imply it).
class SkewTuple {
 public:
  /// Validates shapes, skewness and zero diagonals; throws ContractError.
  SkewTuple(Prime p, std::size_t m, std::vector<Matrix> mats);

  static SkewTuple zero(Prime p, std::size_t m, std::size_t n);

  [[nodiscard]] const Prime& modulus() const noexcept { return p_; }
  [[nodiscard]] std::size_t size() const noexcept { return m_; }
  [[nodiscard]] std::size_t length() const noexcept { return mats_.size(); }
  [[nodiscard]] const std::vector<Matrix>& mats() const noexcept { return mats_; }
  [[nodiscard]] const Matrix& operator[](std::size_t i) const { return mats_.at(i); }

  friend bool operator==(const SkewTuple&, const SkewTuple&) = default;

 private:
  Prime p_;
  std::size_t m_;
  std::vector<Matrix> mats_;
};

/// P o A = (P A_1 P^T, ..., P A_n P^T).
[[nodiscard]] SkewTuple congr_act(const Invertible& P, const SkewTuple& a);
/// A o Q with A'_j = sum_i q_ij A_i.
[[nodiscard]] SkewTuple tuple_act(const SkewTuple& a, const Invertible& Q);
/// Block-diagonal direct sum; all summands must share p and n. An empty
/// list needs the field and tuple length supplied.
[[nodiscard]] SkewTuple block_diag(std::span<const SkewTuple> parts, Prime p, std::size_t n);

}  // namespace pencilform
