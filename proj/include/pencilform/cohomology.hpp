#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pencilform/gf.hpp"
#include "pencilform/matrix.hpp"
#include "pencilform/skew.hpp"

namespace pencilform {

/// Elements of H_m = F_p^m are indexed by their mixed-radix encoding:
/// x = sum_i alpha_i p^i (base p, little-endian in the coordinates).
[[nodiscard]] std::uint64_t top_count(Prime p, std::size_t m);
[[nodiscard]] Vec decode_top(Prime p, std::size_t m, std::uint64_t index);
[[nodiscard]] std::uint64_t encode_top(Prime p, const Vec& x);
/// Index of x + y without decoding.
[[nodiscard]] std::uint64_t add_top(Prime p, std::size_t m, std::uint64_t x, std::uint64_t y);

/// Dense table mu: H_m x H_m -> F_p^n, where F_p^n stands for the p-torsion
/// of the Prufer bottom (value v means sum v_i a_i). Guarded at p^{2m} <= 3^8.
class Cocycle {
 public:
  /// Zero table. Throws ResourceGuardError past the guard.
  Cocycle(Prime p, std::size_t m, std::size_t n);

  [[nodiscard]] const Prime& modulus() const noexcept { return p_; }
  [[nodiscard]] std::size_t top_rank() const noexcept { return m_; }
  [[nodiscard]] std::size_t bottom_rank() const noexcept { return n_; }
  [[nodiscard]] std::uint64_t points() const noexcept { return q_; }

  [[nodiscard]] std::span<const Residue> at(std::uint64_t x, std::uint64_t y) const;
  [[nodiscard]] std::span<Residue> at(std::uint64_t x, std::uint64_t y);

  friend bool operator==(const Cocycle&, const Cocycle&) = default;

 private:
  Prime p_;
  std::size_t m_;
  std::size_t n_;
  std::uint64_t q_;
  std::vector<Residue> data_;
};

/// mu(x, y) = sum_{i<j} alpha_i beta_j t_ij.
[[nodiscard]] Cocycle cocycle_from_form(const SkewTuple& t);
/// Same formula evaluated symbolically, without a table.
[[nodiscard]] Vec form_cocycle_value(const SkewTuple& t, const Vec& x, const Vec& y);

/// t(h_i, h_j) = mu(h_i, h_j) - mu(h_j, h_i). Throws ContractError unless mu
/// is a normalized cocycle.
[[nodiscard]] SkewTuple tau(const Cocycle& mu);
/// The full table of mu(x, y) - mu(y, x).
[[nodiscard]] Cocycle antisymmetrization(const Cocycle& mu);
/// Whether a table is bilinear in each argument.
[[nodiscard]] bool is_bilinear(const Cocycle& t);

/// gamma is a table of p^m vectors of length n with gamma(0) = 0.
/// d gamma(x, y) = gamma(x) + gamma(y) - gamma(x + y).
[[nodiscard]] Cocycle coboundary(Prime p, std::size_t m, std::size_t n,
                                 const std::vector<Vec>& gamma);

using Triple = std::array<std::uint64_t, 3>;
/// First (x, y, z) violating mu(y,z) + mu(x,y+z) = mu(x+y,z) + mu(x,y), if any.
[[nodiscard]] std::optional<Triple> cocycle_violation(const Cocycle& mu);
[[nodiscard]] bool is_cocycle(const Cocycle& mu);
[[nodiscard]] bool is_normalized(const Cocycle& mu);
[[nodiscard]] bool is_symmetric(const Cocycle& mu);

/// A cochain H_m -> (Z/p^2)^n, read as values in the 1/p^2 layer of the
/// Prufer bottom (numerator u means u / p^2).
struct PruferCochain {
  Prime p;
  std::size_t m;
  std::size_t n;
  std::vector<std::vector<std::uint64_t>> values;  // indexed by top element
};
/// d gamma, which must land in the p-torsion; throws ContractError otherwise.
[[nodiscard]] Cocycle coboundary(const PruferCochain& gamma);
/// Some gamma with d gamma = mu, for a normalized symmetric cocycle mu.
/// nullopt if none exists. Searches the reduction of gamma mod p over
/// Hom(H_m, F_p^n) and solves for the rest linearly.
[[nodiscard]] std::optional<PruferCochain> coboundary_preimage(const Cocycle& mu);

/// Basis of the F_p-space of normalized symmetric cocycle tables (n = 1).
[[nodiscard]] std::vector<Cocycle> symmetric_cocycle_basis(Prime p, std::size_t m);

}  // namespace pencilform
