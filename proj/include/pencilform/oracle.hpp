#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pencilform/skew.hpp"

namespace pencilform {

/// Skew pairs of size m are serialized as integers: the upper-triangular
/// entries of A_1 then A_2, row by row, as base-p digits (first digit least
/// significant).
[[nodiscard]] std::uint64_t skew_pair_count(Prime p, std::size_t m);
[[nodiscard]] std::uint64_t encode_pair(const SkewTuple& a);
[[nodiscard]] SkewTuple decode_pair(Prime p, std::size_t m, std::uint64_t code);
/// Every m x m skew pair exactly once, in code order. Guarded at p^{m(m-1)} <= 1e7.
[[nodiscard]] std::vector<SkewTuple> all_skew_pairs(Prime p, std::size_t m);

[[nodiscard]] std::uint64_t gl_order(Prime p, std::size_t m);

/// Orbits as sorted code lists, ordered by their smallest code.
struct OrbitPartition {
  Prime p;
  std::size_t m;
  std::vector<std::vector<std::uint64_t>> orbits;

  friend bool operator==(const OrbitPartition&, const OrbitPartition&) = default;
};

/// Orbits of A -> P o A.
[[nodiscard]] OrbitPartition brute_congruence_partition(Prime p, std::size_t m);
/// Orbits of A -> P o A o Q.
[[nodiscard]] OrbitPartition brute_weak_partition(Prime p, std::size_t m);
/// The partition of all pairs induced by equal values of an invariant; the
/// key is any totally ordered value, passed as its string rendering.
[[nodiscard]] OrbitPartition partition_by(Prime p, std::size_t m,
                                          const std::function<std::string(const SkewTuple&)>& key);
/// Whether every orbit size divides the given group order.
[[nodiscard]] bool orbit_sizes_divide(const OrbitPartition& part, std::uint64_t group_order);
/// Whether every block of `fine` lies inside one block of `coarse`.
[[nodiscard]] bool refines(const OrbitPartition& fine, const OrbitPartition& coarse);

}  // namespace pencilform
