#pragma once

#include <cstdint>
#include <vector>

#include "pencilform/blocks.hpp"
#include "pencilform/matrix.hpp"
#include "pencilform/skew.hpp"

namespace pencilform {

/// Q * g = g(q11 x1 + q12 x2, q21 x1 + q22 x2), rescaled to be unital.
/// A right action: act_point(Q1, act_point(Q2, g)) == act_point(Q2 Q1, g).
/// eps is fixed.
[[nodiscard]] ProjPoint act_point(const Invertible& Q, const ProjPoint& g);

/// (rho * Q)(g, d) = rho(Q * g, d). With the right action on points this is
/// a left action: act_function(Q1, act_function(Q2, rho)) ==
/// act_function(Q1 Q2, rho).
[[nodiscard]] ClassFunction act_function(const Invertible& Q, const ClassFunction& rho);

/// The effect of recombining a pair on its invariants:
/// skew_pair_invariants(tuple_act(A, Q)) == act_function(pair_action(Q), rho(A)).
[[nodiscard]] Invertible pair_action(const Invertible& Q);

/// One representative per element of PGL(2, F_p): [[1,b],[c,d]] with d != bc
/// and [[0,1],[c,d]] with c != 0. Guarded at p(p^2-1) <= 1e7.
[[nodiscard]] const std::vector<Invertible>& pgl2_representatives(Prime p);

/// Lexicographically smallest rho * Q over all Q.
[[nodiscard]] ClassFunction orbit_canonical(const ClassFunction& rho);

/// Complete invariant of weak congruence for skew pairs.
[[nodiscard]] ClassFunction weak_canonicalize(const SkewTuple& a);

/// Every block spec of size <= m, in serialization order.
[[nodiscard]] std::vector<BlockSpec> block_specs_up_to(Prime p, std::size_t m);
/// Every class function of total size exactly m (congruence classes).
[[nodiscard]] std::vector<ClassFunction> all_class_functions(Prime p, std::size_t m);

/// One orbit-canonical rho per weak-congruence class of m x m pairs, sorted.
[[nodiscard]] std::vector<ClassFunction> enumerate_classes(Prime p, std::size_t m);
[[nodiscard]] std::size_t count_classes(Prime p, std::size_t m);

}  // namespace pencilform
