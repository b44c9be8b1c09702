#include "pencilform/skew.hpp"

#include <string>

#include "pencilform/error.hpp"

namespace pencilform {

SkewTuple::SkewTuple(Prime p, std::size_t m, std::vector<Matrix> mats)
    : p_(p), m_(m), mats_(std::move(mats)) {
  for (std::size_t k = 0; k < mats_.size(); ++k) {
    const Matrix& a = mats_[k];
    const std::string which = "matrix " + std::to_string(k + 1);
    if (!(a.modulus() == p_)) throw ContractError(which + " is over a different prime");
    if (a.rows() != m_ || a.cols() != m_) {
      throw ContractError(which + " is not " + std::to_string(m_) + "x" + std::to_string(m_));
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (a(i, i) != 0) throw ContractError(which + " has a nonzero diagonal entry");
      for (std::size_t j = i + 1; j < m_; ++j) {
        if (a(j, i) != p_.neg(a(i, j))) throw ContractError(which + " is not skew-symmetric");
      }
    }
  }
}

SkewTuple SkewTuple::zero(Prime p, std::size_t m, std::size_t n) {
  return {p, m, std::vector<Matrix>(n, Matrix(p, m, m))};
}

SkewTuple congr_act(const Invertible& P, const SkewTuple& a) {
  if (P.size() != a.size()) throw ContractError("congr_act: P has the wrong size");
  if (!(P.matrix().modulus() == a.modulus())) throw ContractError("congr_act: prime mismatch");
  const Matrix pt = P.matrix().transpose();
  std::vector<Matrix> out;
  out.reserve(a.length());
  for (const auto& m : a.mats()) out.push_back(P.matrix() * m * pt);
  return {a.modulus(), a.size(), std::move(out)};
}

SkewTuple tuple_act(const SkewTuple& a, const Invertible& Q) {
  if (Q.size() != a.length()) throw ContractError("tuple_act: Q has the wrong size");
  if (!(Q.matrix().modulus() == a.modulus())) throw ContractError("tuple_act: prime mismatch");
  const Matrix& q = Q.matrix();
  std::vector<Matrix> out;
  out.reserve(a.length());
  for (std::size_t j = 0; j < a.length(); ++j) {
    Matrix acc(a.modulus(), a.size(), a.size());
    for (std::size_t i = 0; i < a.length(); ++i) {
      if (q(i, j) != 0) acc = acc + a[i].scaled(q(i, j));
    }
    out.push_back(std::move(acc));
  }
  return {a.modulus(), a.size(), std::move(out)};
}

SkewTuple block_diag(std::span<const SkewTuple> parts, Prime p, std::size_t n) {
  std::size_t total = 0;
  for (const auto& t : parts) {
    if (!(t.modulus() == p)) throw ContractError("block_diag: mixed primes");
    if (t.length() != n) throw ContractError("block_diag: mixed tuple lengths");
    total += t.size();
  }
  std::vector<Matrix> out(n, Matrix(p, total, total));
  std::size_t offset = 0;
  for (const auto& t : parts) {
    for (std::size_t i = 0; i < n; ++i) out[i].set_block(offset, offset, t[i]);
    offset += t.size();
  }
  return {p, total, std::move(out)};
}

}  // namespace pencilform
