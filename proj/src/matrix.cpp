#include "pencilform/matrix.hpp"

#include <sstream>
#include <utility>

#include "pencilform/error.hpp"

namespace pencilform {

namespace {

void require_same_field(const Matrix& a, const Matrix& b, const char* op) {
  if (!(a.modulus() == b.modulus())) {
    throw ContractError(std::string(op) + ": matrices over different primes");
  }
}

}  // namespace

Matrix::Matrix(Prime p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(Prime p, std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : p_(p), rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ContractError("ragged matrix literal");
    for (auto v : row) data_.push_back(p_.reduce(v));
  }
}

Matrix::Matrix(Prime p, const std::vector<std::vector<std::int64_t>>& rows)
    : p_(p), rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ContractError("ragged matrix rows");
    for (auto v : row) data_.push_back(p_.reduce(v));
  }
}

Matrix Matrix::identity(Prime p, std::size_t n) {
  Matrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(Prime p, const Vec& d) {
  Matrix m(p, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i] % p.value();
  return m;
}

bool Matrix::is_zero() const noexcept {
  for (auto v : data_) {
    if (v != 0) return false;
  }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix Matrix::scaled(Residue s) const {
  Matrix out(*this);
  for (auto& v : out.data_) v = p_.mul(v, s);
  return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw ContractError("block out of range");
  Matrix b(p_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  }
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  require_same_field(*this, b, "set_block");
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw ContractError("block out of range");
  for (std::size_t r = 0; r < b.rows_; ++r) {
    for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw ContractError("apply: dimension mismatch");
  Vec out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc = (acc + static_cast<std::uint64_t>((*this)(r, c)) * v[c]) % p_.value();
    }
    out[r] = static_cast<Residue>(acc);
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "add");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ContractError("add: shape mismatch");
  Matrix out(a);
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.p_.add(a.data_[i], b.data_[i]);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "sub");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ContractError("sub: shape mismatch");
  Matrix out(a);
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.p_.sub(a.data_[i], b.data_[i]);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "mul");
  if (a.cols_ != b.rows_) throw ContractError("mul: shape mismatch");
  const std::uint64_t p = a.p_.value();
  Matrix out(a.p_, a.rows_, b.cols_);
  std::vector<std::uint64_t> acc(b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::uint64_t v = a(r, k);
      if (v == 0) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) {
        acc[c] = (acc[c] + v * b(k, c)) % p;
      }
    }
    for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) = static_cast<Residue>(acc[c]);
  }
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ", ";
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ',';
      os << (*this)(r, c);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

std::vector<std::size_t> rref(Matrix& m) {
  const Prime& p = m.modulus();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    }
    const Residue inv = p.inv(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = p.mul(m(row, c), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Residue f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (m(row, c) != 0) m(r, c) = p.sub(m(r, c), p.mul(f, m(row, c)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(const Matrix& m) {
  Matrix work(m);
  return rref(work).size();
}

std::vector<Vec> kernel(const Matrix& m) {
  Matrix work(m);
  const auto pivots = rref(work);
  const Prime& p = m.modulus();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = p.neg(work(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw ContractError("solve: dimension mismatch");
  Matrix aug(m.modulus(), m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t r = 0; r < m.rows(); ++r) aug(r, m.cols()) = b[r];
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
  return x;
}

Residue det(const Matrix& m) {
  if (!m.is_square()) throw ContractError("det: matrix is not square");
  const Prime& p = m.modulus();
  Matrix w(m);
  Residue d = 1;
  const std::size_t n = w.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && w(sel, col) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(w(sel, c), w(col, c));
      d = p.neg(d);
    }
    d = p.mul(d, w(col, col));
    const Residue inv = p.inv(w(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (w(r, col) == 0) continue;
      const Residue f = p.mul(w(r, col), inv);
      for (std::size_t c = col; c < n; ++c) w(r, c) = p.sub(w(r, c), p.mul(f, w(col, c)));
    }
  }
  return d;
}

Invertible inverse(const Matrix& m) { return Invertible(m); }

Invertible::Invertible(Matrix m) : m_(std::move(m)), inv_(m_.modulus(), 0, 0) {
  if (!m_.is_square()) throw ContractError("inverse: matrix is not square");
  const std::size_t n = m_.rows();
  Matrix aug(m_.modulus(), n, 2 * n);
  aug.set_block(0, 0, m_);
  for (std::size_t i = 0; i < n; ++i) aug(i, n + i) = 1;
  const auto pivots = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) {
    throw SingularMatrixError("matrix is singular");
  }
  inv_ = aug.block(0, n, n, n);
}

}  // namespace pencilform
