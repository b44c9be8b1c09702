#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "pencilform/error.hpp"
#include "pencilform/matrix.hpp"
#include "pencilform/skew.hpp"

using namespace pencilform;
using namespace pencilform::testing;

namespace {

// Leibniz formula: sum over permutations, independent of elimination.
Residue leibniz_det(const Matrix& a) {
  const Prime& p = a.modulus();
  std::vector<std::size_t> perm(a.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Residue total = 0;
  do {
    Residue term = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) term = p.mul(term, a(i, perm[i]));
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    total = inversions % 2 ? p.sub(total, term) : p.add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("determinant agrees with the permutation expansion") {
  std::mt19937_64 rng(11);
  for (std::uint32_t pv : {2u, 3u, 5u, 7u}) {
    const Prime p(pv);
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 1 + rng() % 5;
      const Matrix a = any_matrix(p, n, n, rng);
      CHECK(det(a) == leibniz_det(a));
    }
  }
}

TEST_CASE("rank and kernel") {
  std::mt19937_64 rng(12);
  const Prime p(5);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    Matrix a = any_matrix(p, r, c, rng);
    if (t % 3 == 0 && r > 1) a.set_block(r - 1, 0, a.block(0, 0, 1, c));  // force a repeated row
    const auto ker = kernel(a);
    CHECK(rank(a) + ker.size() == c);
    for (const auto& v : ker) {
      const Vec img = a.apply(v);
      CHECK(std::all_of(img.begin(), img.end(), [](Residue x) { return x == 0; }));
    }
    if (!ker.empty()) {
      Matrix k(p, ker.size(), c);
      for (std::size_t i = 0; i < ker.size(); ++i)
        for (std::size_t j = 0; j < c; ++j) k(i, j) = ker[i][j];
      CHECK(rank(k) == ker.size());
    }
  }
}

TEST_CASE("inverse and solve") {
  std::mt19937_64 rng(13);
  const Prime p(7);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const Invertible a = any_invertible(p, n, rng);
    CHECK(a.matrix() * a.inverse() == Matrix::identity(p, n));
    CHECK(a.inverse() * a.matrix() == Matrix::identity(p, n));
    Vec b(n);
    for (auto& v : b) v = any_residue(p, rng);
    const auto x = solve(a.matrix(), b);
    REQUIRE(x.has_value());
    CHECK(a.matrix().apply(*x) == b);
  }
  CHECK_THROWS_AS(Invertible(Matrix(p, {{1, 2}, {2, 4}})), SingularMatrixError);
  CHECK_FALSE(solve(Matrix(p, {{1, 2}, {2, 4}}), Vec{1, 0}).has_value());
}

TEST_CASE("skew tuples are validated") {
  const Prime p(3);
  CHECK_NOTHROW(SkewTuple(p, 2, {Matrix(p, {{0, 1}, {2, 0}})}));
  CHECK_THROWS_AS(SkewTuple(p, 2, {Matrix(p, {{0, 1}, {1, 0}})}), ContractError);
  CHECK_THROWS_AS(SkewTuple(p, 2, {Matrix(p, {{1, 0}, {0, 2}})}), ContractError);
  CHECK_THROWS_AS(SkewTuple(p, 3, {Matrix(p, {{0, 1}, {2, 0}})}), ContractError);
  // In characteristic 2 symmetric and skew agree, but the diagonal must still vanish.
  const Prime two(2);
  CHECK_NOTHROW(SkewTuple(two, 2, {Matrix(two, {{0, 1}, {1, 0}})}));
  CHECK_THROWS_AS(SkewTuple(two, 2, {Matrix(two, {{1, 1}, {1, 0}})}), ContractError);
}

TEST_CASE("congruence and recombination") {
  const Prime p(3);
  const Matrix j(p, {{0, 1}, {2, 0}});
  const SkewTuple a(p, 2, {j, Matrix(p, 2, 2)});
  // 2I scales each form by 4 = 1.
  CHECK(congr_act(Invertible(Matrix(p, {{2, 0}, {0, 2}})), a) == a);
  // P = diag(1, 2) doubles the (1, 2) entry.
  CHECK(congr_act(Invertible(Matrix(p, {{1, 0}, {0, 2}})), a)[0] == j.scaled(2));
  // Q = swap exchanges the two forms.
  const Invertible swap(Matrix(p, {{0, 1}, {1, 0}}));
  const SkewTuple b = tuple_act(a, swap);
  CHECK(b[0].is_zero());
  CHECK(b[1] == j);
  CHECK(tuple_act(b, swap) == a);
}

TEST_CASE("actions compose") {
  std::mt19937_64 rng(14);
  const Prime p(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 1 + rng() % 5;
    const SkewTuple a = any_skew(p, m, 2, rng);
    const Invertible p1 = any_invertible(p, m, rng), p2 = any_invertible(p, m, rng);
    const Invertible q1 = any_invertible(p, 2, rng), q2 = any_invertible(p, 2, rng);
    CHECK(congr_act(p1, congr_act(p2, a)) == congr_act(p1 * p2, a));
    CHECK(tuple_act(tuple_act(a, q1), q2) == tuple_act(a, q1 * q2));
    CHECK(congr_act(p1, tuple_act(a, q1)) == tuple_act(congr_act(p1, a), q1));
  }
}

TEST_CASE("block diagonal assembly") {
  const Prime p(3);
  const SkewTuple a(p, 2, {Matrix(p, {{0, 1}, {2, 0}}), Matrix(p, 2, 2)});
  const SkewTuple z = SkewTuple::zero(p, 1, 2);
  const std::vector<SkewTuple> parts{z, a};
  const SkewTuple s = block_diag(parts, p, 2);
  CHECK(s.size() == 3);
  CHECK(s[0](1, 2) == 1);
  CHECK(s[0](2, 1) == 2);
  CHECK(s[0](0, 1) == 0);
  CHECK(block_diag({}, p, 2).size() == 0);
}
