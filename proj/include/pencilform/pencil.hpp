#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pencilform/blocks.hpp"
#include "pencilform/matrix.hpp"
#include "pencilform/skew.hpp"

namespace pencilform {

/// Representation of the generalized Kronecker quiver K_n: spaces of
/// dimensions d1 (source) and d2 (target), and n maps given as d2 x d1
/// matrices.
class QuiverRep {
 public:
  QuiverRep(Prime p, std::size_t d1, std::size_t d2, std::vector<Matrix> maps);

  [[nodiscard]] const Prime& modulus() const noexcept { return p_; }
  [[nodiscard]] std::size_t d1() const noexcept { return d1_; }
  [[nodiscard]] std::size_t d2() const noexcept { return d2_; }
  [[nodiscard]] std::size_t arrows() const noexcept { return maps_.size(); }
  [[nodiscard]] const std::vector<Matrix>& maps() const noexcept { return maps_; }
  [[nodiscard]] const Matrix& operator[](std::size_t i) const { return maps_.at(i); }

  friend bool operator==(const QuiverRep&, const QuiverRep&) = default;

 private:
  Prime p_;
  std::size_t d1_;
  std::size_t d2_;
  std::vector<Matrix> maps_;
};

/// A skew tuple viewed as a representation V -> V*.
[[nodiscard]] QuiverRep as_rep(const SkewTuple& a);

/// R*: swaps the vertices, each map becomes its negated transpose.
[[nodiscard]] QuiverRep dual(const QuiverRep& r);

/// R+ : the skew tuple [[0, R(a_i)], [-R(a_i)^T, 0]] of size d2 + d1.
/// Throws UnsupportedCharacteristic for p = 2.
[[nodiscard]] SkewTuple self_dual_double(const QuiverRep& r);

/// The indecomposable pencils: eps -> R_{-,d} ((d-1) x d maps (I|0), (0|I)),
/// x2 -> R_{inf,d} = (F(x^d), I), finite g -> R_f = (I, F(f)) with f = g(x,1)^d.
[[nodiscard]] QuiverRep indecomposable(const BlockSpec& spec);
/// R_{+,d}: the transposes of the R_{-,d} maps (d x (d-1)).
[[nodiscard]] QuiverRep plus_indecomposable(Prime p, unsigned d);

/// det(x1 R_1 - x2 R_2) for a square pencil (constant 1 for the 0 x 0 pencil).
[[nodiscard]] HomPoly hom_char_poly(const QuiverRep& r);

/// Strict-equivalence invariants of a pencil (n = 2).
struct KroneckerData {
  std::vector<unsigned> col_min_indices;  // sorted ascending
  std::vector<unsigned> row_min_indices;  // sorted ascending
  /// (unital irreducible form, exponent), sorted; repeats are multiplicity.
  std::vector<std::pair<ProjPoint, unsigned>> elem_divisors;

  friend bool operator==(const KroneckerData&, const KroneckerData&) = default;
};

/// Minimal indices from kernel dimensions of the block-Toeplitz inflations of
/// x1 R_1 - x2 R_2; elementary divisors from a diagonal form of x R_1 - R_2
/// (finite part) and R_1 - y R_2 (the y-adic part gives the point x2).
[[nodiscard]] KroneckerData kronecker_invariants(const QuiverRep& r);

/// The unique class function rho with A congruent to the direct sum of the
/// canonical blocks. Throws UnsupportedCharacteristic for p = 2.
[[nodiscard]] ClassFunction skew_pair_invariants(const SkewTuple& a);

/// Canonical block for one spec. Singular blocks use the R_{+,d} doubling,
/// whose commutator pattern is the relation table of build_presentation.
[[nodiscard]] SkewTuple canonical_block(const BlockSpec& spec);
/// Block-diagonal assembly in serialization order.
[[nodiscard]] SkewTuple canonical_pair(const ClassFunction& rho);

struct CongruenceTransform {
  Invertible P;
  ClassFunction rho;
};
/// Finds P with congr_act(P, A) == canonical_pair(rho). The result is
/// re-verified before returning; a failure raises VerificationError.
[[nodiscard]] CongruenceTransform congruence_transform(const SkewTuple& a);

/// Basis of Hom(from, to): pairs (f1, f2) with f2 from[i] = to[i] f1.
[[nodiscard]] std::vector<std::pair<Matrix, Matrix>> hom_space(const QuiverRep& from,
                                                                const QuiverRep& to);
[[nodiscard]] std::vector<std::pair<Matrix, Matrix>> endomorphism_space(const QuiverRep& r);
/// An invertible element of Hom(from, to), searched by seeded random
/// combinations of a basis. nullopt if none was found.
[[nodiscard]] std::optional<std::pair<Invertible, Invertible>> find_isomorphism(
    const QuiverRep& from, const QuiverRep& to);

/// S, a polynomial in U, with S * S == U; nullopt when no polynomial square
/// root exists (some primary component has a non-square eigenvalue).
[[nodiscard]] std::optional<Matrix> polynomial_sqrt(const Matrix& u);

}  // namespace pencilform
