#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pencilform/blocks.hpp"
#include "pencilform/matrix.hpp"
#include "pencilform/skew.hpp"

namespace pencilform {

/// a / p^k in the quasi-cyclic group Z(p^inf), with 0 <= a < p^k and k
/// minimal. Exponents are bounded by p^k < 2^62.
class PruferElem {
 public:
  explicit PruferElem(Prime p) : p_(p) {}
  /// Reduces a mod p^k and normalizes.
  PruferElem(Prime p, std::uint64_t a, unsigned k);
  /// The embedding of F_p onto the order-p layer: v -> v / p.
  static PruferElem from_torsion(Prime p, Residue v) { return {p, v, 1}; }

  [[nodiscard]] const Prime& modulus() const noexcept { return p_; }
  [[nodiscard]] std::uint64_t numerator() const noexcept { return a_; }
  [[nodiscard]] unsigned exponent() const noexcept { return k_; }
  [[nodiscard]] bool is_zero() const noexcept { return k_ == 0; }
  /// p^exponent.
  [[nodiscard]] std::uint64_t order() const;

  friend PruferElem operator+(const PruferElem& x, const PruferElem& y);
  friend PruferElem operator-(const PruferElem& x, const PruferElem& y);
  [[nodiscard]] PruferElem operator-() const;
  /// Integer multiple c * x.
  [[nodiscard]] PruferElem times(std::uint64_t c) const;

  friend bool operator==(const PruferElem&, const PruferElem&) = default;
  friend auto operator<=>(const PruferElem&, const PruferElem&) = default;

  [[nodiscard]] std::string to_string() const;

 private:
  Prime p_;
  std::uint64_t a_ = 0;
  unsigned k_ = 0;
};

using PruferVector = std::vector<PruferElem>;

struct GroupElement {
  PruferVector bottom;
  Vec top;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// G(A): the central extension of H_m by the Prufer bottom M^(n) whose
/// commutator form is A, with the law
/// (b1, h1) + (b2, h2) = (b1 + b2 + mu(h1, h2), h1 + h2).
class GroupModel {
 public:
  /// Throws UnsupportedCharacteristic for p = 2.
  explicit GroupModel(SkewTuple forms);

  [[nodiscard]] const Prime& modulus() const noexcept { return forms_.modulus(); }
  [[nodiscard]] std::size_t top_rank() const noexcept { return forms_.size(); }
  [[nodiscard]] std::size_t bottom_rank() const noexcept { return forms_.length(); }
  [[nodiscard]] const SkewTuple& forms() const noexcept { return forms_; }

  [[nodiscard]] GroupElement identity() const;
  /// (0, h_i), 0-based.
  [[nodiscard]] GroupElement generator(std::size_t i) const;
  /// Bottom element a_k / p^e placed in coordinate k, 0-based.
  [[nodiscard]] GroupElement bottom_unit(std::size_t k, unsigned e) const;
  /// mu(x, y) embedded in the order-p layer.
  [[nodiscard]] PruferVector mu(const Vec& x, const Vec& y) const;
  /// Throws ContractError unless u has the right shape and field.
  void check(const GroupElement& u) const;

 private:
  SkewTuple forms_;
};

[[nodiscard]] GroupElement g_add(const GroupModel& g, const GroupElement& u, const GroupElement& v);
[[nodiscard]] GroupElement g_neg(const GroupModel& g, const GroupElement& u);
/// c * u for c >= 0.
[[nodiscard]] GroupElement g_times(const GroupModel& g, const GroupElement& u, std::uint64_t c);
/// [u, v] = u + v - u - v.
[[nodiscard]] GroupElement commutator(const GroupModel& g, const GroupElement& u,
                                      const GroupElement& v);
/// Least k > 0 with k u = 0; always a power of p.
[[nodiscard]] std::uint64_t element_order(const GroupModel& g, const GroupElement& u);

/// All elements whose bottom coordinates have exponent <= e. For e >= 1
/// this is a finite subgroup.
[[nodiscard]] std::vector<GroupElement> bounded_elements(const GroupModel& g, unsigned e);

struct Relation {
  std::size_t block;  // 1-based
  std::size_t i;      // 1-based, i < j, within the block
  std::size_t j;
  Vec value;          // coefficients of a_1 .. a_n

  friend bool operator==(const Relation&, const Relation&) = default;
};

/// Generators h<k>_<i> grouped by block, the implicit relations (every
/// generator has order p, the bottom is central) and the nonzero
/// commutators of generators within one block.
struct Presentation {
  Prime p;
  std::size_t n;
  std::vector<std::size_t> block_sizes;
  std::vector<Relation> relations;  // sorted by (block, i, j); nonzero only

  [[nodiscard]] std::size_t generator_count() const;
  /// 0-based global generator index of h<k>_<i>.
  [[nodiscard]] std::size_t global_index(std::size_t block, std::size_t i) const;
  friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Blocks in canonical order, relations from the closed-form commutator table.
[[nodiscard]] Presentation build_presentation(const ClassFunction& rho);
/// n = 1: one block of 2k + l generators with [h_i, h_{k+i}] = a1.
[[nodiscard]] Presentation presentation_n1(Prime p, std::size_t k, std::size_t l);
/// The skew tuple (n = 1) whose group is presented by presentation_n1.
[[nodiscard]] SkewTuple n1_tuple(Prime p, std::size_t k, std::size_t l);
/// The forms read off a presentation: A_c[i][j] = coefficient of a_c.
[[nodiscard]] SkewTuple presentation_forms(const Presentation& pres);

[[nodiscard]] std::string presentation_text(const Presentation& pres);

struct VerificationReport {
  bool pass = true;
  std::string message;
  std::optional<std::pair<std::size_t, std::size_t>> pair;  // global 0-based (i, j)
};
[[nodiscard]] VerificationReport verify_presentation(const GroupModel& g, const Presentation& pres);

/// Whether G(A) and G(B) are isomorphic, i.e. A and B weakly congruent.
[[nodiscard]] bool decide_isomorphic(const SkewTuple& a, const SkewTuple& b);

/// (P, Q) with B == congr_act(P, tuple_act(A, Q)), or nullopt.
struct WeakCertificate {
  Invertible P;
  Invertible Q;
};
[[nodiscard]] std::optional<WeakCertificate> find_certificate(const SkewTuple& a,
                                                              const SkewTuple& b);

/// The isomorphism G(A) -> G(B) induced by B = P o A o Q:
/// phi(b, h) = (sigma(b) + gamma(h), theta h) with theta = P^{-T} and sigma
/// the integer lift of Q^T. Throws ContractError on a bad certificate.
class IsomorphismMap {
 public:
  IsomorphismMap(const GroupModel& from, const GroupModel& to, const Invertible& P,
                 const Invertible& Q);
  [[nodiscard]] GroupElement operator()(const GroupElement& u) const;

 private:
  const GroupModel* from_;
  const GroupModel* to_;
  Matrix theta_;
  Matrix sigma_;
  std::vector<Matrix> quad_;  // gamma_l(x) = x^T quad_[l] x
};

struct HomomorphismCheck {
  bool pass = true;
  bool exhaustive_pairs = false;  // false: all elements against generators
  std::size_t checked = 0;
  std::string message;
};
/// Checks phi(u + v) == phi(u) + phi(v) on the exponent-<= e subgroup and
/// injectivity there. Pairs are checked exhaustively when the square of the
/// subgroup size is at most pair_limit, otherwise every element against a
/// generating set, which implies the full statement.
[[nodiscard]] HomomorphismCheck check_isomorphism_map(const IsomorphismMap& phi,
                                                      const GroupModel& from,
                                                      const GroupModel& to, unsigned e,
                                                      std::uint64_t pair_limit = 1'000'000);

struct FiniteSplit {
  unsigned k_finite;
  ClassFunction rest;
  std::optional<std::pair<unsigned, unsigned>> special;
};
/// Splits off the finite direct factor H_k and detects the G_k x G_l case.
[[nodiscard]] FiniteSplit finite_factor_split(const ClassFunction& rho);

}  // namespace pencilform
