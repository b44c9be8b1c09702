#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pencilform/poly.hpp"

namespace pencilform {

/// A closed point of the projective line over F_p (a unital irreducible
/// homogeneous polynomial in x1, x2), or the extra symbol eps that labels
/// the singular blocks. Unital means: g = x2, or the x1-leading coefficient is 1.
class ProjPoint {
 public:
  static ProjPoint eps(Prime p) { return ProjPoint(p, std::nullopt); }
  /// Validates that g is unital and irreducible; throws ContractError.
  static ProjPoint point(HomPoly g);
  static ProjPoint infinity(Prime p) { return ProjPoint(p, HomPoly::x2(p)); }
  /// The point x2^deg(f) f(x1/x2) for a monic irreducible f.
  static ProjPoint finite(const Poly& f);
  /// Rescales a form to its unital representative. The form must already be
  /// irreducible (images of points under GL(2) are); only the shape is checked.
  static ProjPoint normalized(const HomPoly& g);

  [[nodiscard]] const Prime& modulus() const noexcept { return p_; }
  [[nodiscard]] bool is_eps() const noexcept { return !g_.has_value(); }
  [[nodiscard]] bool is_infinity() const noexcept;
  /// Throws ContractError for eps.
  [[nodiscard]] const HomPoly& form() const;
  /// Degree of the form; 0 for eps.
  [[nodiscard]] unsigned degree() const noexcept { return g_ ? g_->degree() : 0; }
  /// "eps", "x2", "x1+2*x2", ...
  [[nodiscard]] std::string label() const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  /// eps first, then by (degree, coefficients by x1-degree).
  friend bool operator<(const ProjPoint& a, const ProjPoint& b);

 private:
  ProjPoint(Prime p, std::optional<HomPoly> g) : p_(p), g_(std::move(g)) {}
  Prime p_;
  std::optional<HomPoly> g_;
};

/// Index (point, d) of one canonical self-dual block. For eps the block is
/// the doubled minimal (singular) pencil of size 2d-1; for a point g it is
/// the doubled regular pencil with elementary divisor g^d, of size 2 d deg g.
struct BlockSpec {
  ProjPoint point;
  unsigned d;

  [[nodiscard]] std::size_t size() const noexcept;
  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
  friend bool operator<(const BlockSpec& a, const BlockSpec& b) {
    if (!(a.point == b.point)) return a.point < b.point;
    return a.d < b.d;
  }
};

/// Finitely supported multiplicity function on (points + eps) x N.
class ClassFunction {
 public:
  explicit ClassFunction(Prime p) : p_(p) {}

  [[nodiscard]] const Prime& modulus() const noexcept { return p_; }
  /// Adds mult copies; zero is a no-op. Throws on d = 0 or prime mismatch.
  void add(const BlockSpec& spec, unsigned mult = 1);
  [[nodiscard]] unsigned operator()(const BlockSpec& spec) const;
  [[nodiscard]] bool empty() const noexcept { return m_.empty(); }
  /// Sum of size(spec) * mult: the matrix size of the canonical pair.
  [[nodiscard]] std::size_t total_size() const noexcept;
  /// Support in serialization order.
  [[nodiscard]] const std::map<BlockSpec, unsigned>& entries() const noexcept { return m_; }

  friend bool operator==(const ClassFunction&, const ClassFunction&) = default;
  /// Lexicographic on the ordered entry lists.
  friend bool operator<(const ClassFunction& a, const ClassFunction& b);

  [[nodiscard]] std::string to_string() const;

 private:
  Prime p_;
  std::map<BlockSpec, unsigned> m_;
};

}  // namespace pencilform
