#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pencilform/gf.hpp"

namespace pencilform {

class Matrix;

/// Dense univariate polynomial over F_p, coefficients lowest degree first.
/// Always trimmed: the zero polynomial has no coefficients.
class Poly {
 public:
  Poly(Prime p, std::vector<Residue> coeffs);
  explicit Poly(Prime p) : p_(p) {}

  static Poly constant(Prime p, Residue c) { return {p, {c}}; }
  static Poly monomial(Prime p, std::size_t degree, Residue c = 1);
  static Poly x(Prime p) { return monomial(p, 1); }

  [[nodiscard]] const Prime& modulus() const noexcept { return p_; }
  [[nodiscard]] const std::vector<Residue>& coeffs() const noexcept { return c_; }
  [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] Residue coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  [[nodiscard]] Residue leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
  [[nodiscard]] bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
  [[nodiscard]] Poly monic() const;
  [[nodiscard]] Residue eval(Residue at) const noexcept;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  [[nodiscard]] Poly scaled(Residue s) const;
  [[nodiscard]] Poly operator-() const { return scaled(p_.neg(1)); }

  /// Euclidean division; throws ContractError when dividing by zero.
  [[nodiscard]] std::pair<Poly, Poly> divmod(const Poly& divisor) const;
  friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

  friend bool operator==(const Poly&, const Poly&) = default;
  /// Orders by (degree, coefficients lowest first).
  friend bool operator<(const Poly& a, const Poly& b);

  /// Human-readable form, e.g. "x^2+2*x+1".
  [[nodiscard]] std::string to_string(const char* var = "x") const;

 private:
  void trim();
  Prime p_;
  std::vector<Residue> c_;
};

/// Monic gcd (zero only if both inputs are zero).
[[nodiscard]] Poly gcd(const Poly& a, const Poly& b);
/// Returns (g, s, t) with s*a + t*b = g, g monic.
struct ExtGcd {
  Poly g, s, t;
};
[[nodiscard]] ExtGcd ext_gcd(const Poly& a, const Poly& b);
[[nodiscard]] Poly powmod(const Poly& base, std::uint64_t e, const Poly& modulus);
/// Inverse of a modulo m; throws ContractError when gcd(a, m) != 1.
[[nodiscard]] Poly inverse_mod(const Poly& a, const Poly& m);

using Factorization = std::vector<std::pair<Poly, unsigned>>;

/// Factors a monic polynomial of degree >= 1 into distinct monic irreducibles
/// with multiplicities, sorted by (degree, coefficients). Trial division
/// against enumerated irreducibles.
[[nodiscard]] Factorization poly_factor(const Poly& f);
[[nodiscard]] bool is_irreducible(const Poly& f);

/// All monic irreducibles of degree 1..d, sorted. Guard: p^d <= 10^6.
[[nodiscard]] const std::vector<Poly>& irreducibles_up_to(Prime p, unsigned d);

/// Companion matrix: ones on the first subdiagonal, -f_0..-f_{d-1} in the
/// last column. Throws ContractError for non-monic or constant f.
[[nodiscard]] Matrix frobenius_matrix(const Poly& f);

using PolyMatrix = std::vector<std::vector<Poly>>;
/// Determinant over F_p[x] by fraction-free (Bareiss) elimination.
[[nodiscard]] Poly det(PolyMatrix m, Prime p);

/// det(x*I - M).
[[nodiscard]] Poly char_poly(const Matrix& m);
/// f(M) by Horner's rule.
[[nodiscard]] Matrix evaluate(const Poly& f, const Matrix& m);

/// Homogeneous polynomial in x1, x2 of fixed total degree d; coefficient
/// k multiplies x1^k x2^(d-k).
class HomPoly {
 public:
  HomPoly(Prime p, unsigned degree, std::vector<Residue> by_x1_degree);

  /// x2^d * f(x1/x2); requires deg f <= d.
  static HomPoly homogenize(const Poly& f, unsigned d);
  static HomPoly x1(Prime p) { return {p, 1, {0, 1}}; }
  static HomPoly x2(Prime p) { return {p, 1, {1, 0}}; }

  [[nodiscard]] const Prime& modulus() const noexcept { return p_; }
  [[nodiscard]] unsigned degree() const noexcept { return d_; }
  [[nodiscard]] const std::vector<Residue>& coeffs() const noexcept { return c_; }
  [[nodiscard]] bool is_zero() const noexcept;
  /// g(x, 1) as a univariate polynomial.
  [[nodiscard]] Poly dehomogenize() const { return {p_, c_}; }
  /// g(q11*x1 + q12*x2, q21*x1 + q22*x2).
  [[nodiscard]] HomPoly substitute(Residue q11, Residue q12, Residue q21, Residue q22) const;
  [[nodiscard]] HomPoly scaled(Residue s) const;
  friend HomPoly operator*(const HomPoly& a, const HomPoly& b);

  friend bool operator==(const HomPoly&, const HomPoly&) = default;
  friend bool operator<(const HomPoly& a, const HomPoly& b);

  /// e.g. "x1^2+x1*x2+2*x2^2", "x2", "0".
  [[nodiscard]] std::string to_string() const;

 private:
  Prime p_;
  unsigned d_;
  std::vector<Residue> c_;
};

}  // namespace pencilform
