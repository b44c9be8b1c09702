#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "pencilform/error.hpp"
#include "pencilform/pencil.hpp"
#include "pencilform/weakcong.hpp"

using namespace pencilform;
using namespace pencilform::testing;

namespace {

BlockSpec eps(Prime p, unsigned d) { return {ProjPoint::eps(p), d}; }
BlockSpec inf(Prime p, unsigned d) { return {ProjPoint::infinity(p), d}; }
BlockSpec fin(const Poly& f, unsigned d) { return {ProjPoint::finite(f), d}; }

QuiverRep pencil(const Matrix& a, const Matrix& b) {
  return QuiverRep(a.modulus(), a.cols(), a.rows(), {a, b});
}

// Elementary divisors of (I, M) from ranks of powers of f(M), one
// irreducible f at a time. Does not touch the pencil code.
std::map<std::pair<ProjPoint, unsigned>, unsigned> jordan_divisors(const Matrix& m) {
  const Prime& p = m.modulus();
  std::map<std::pair<ProjPoint, unsigned>, unsigned> out;
  const std::size_t n = m.rows();
  for (const auto& [f, mult] : poly_factor(char_poly(m))) {
    const Matrix fm = evaluate(f, m);
    std::vector<std::size_t> ranks{n};
    Matrix power = Matrix::identity(p, n);
    for (unsigned k = 1; k <= mult + 1; ++k) {
      power = power * fm;
      ranks.push_back(rank(power));
    }
    const auto deg = static_cast<std::size_t>(f.degree());
    for (unsigned k = 1; k <= mult; ++k) {
      // blocks of exponent exactly k = at_least(k) - at_least(k+1)
      const std::size_t at_least_k = (ranks[k - 1] - ranks[k]) / deg;
      const std::size_t at_least_k1 = (ranks[k] - ranks[k + 1]) / deg;
      if (at_least_k > at_least_k1) out[{ProjPoint::finite(f), k}] = at_least_k - at_least_k1;
    }
  }
  return out;
}

std::map<std::pair<ProjPoint, unsigned>, unsigned> as_counts(const KroneckerData& k) {
  std::map<std::pair<ProjPoint, unsigned>, unsigned> out;
  for (const auto& e : k.elem_divisors) ++out[e];
  return out;
}

// Number of monic irreducibles of degree k over F_p, by Moebius inversion.
std::uint64_t necklace(std::uint64_t p, unsigned k) {
  auto mobius = [](unsigned n) {
    int mu = 1;
    for (unsigned q = 2; q * q <= n; ++q) {
      if (n % q == 0) {
        n /= q;
        if (n % q == 0) return 0;
        mu = -mu;
      }
    }
    return n > 1 ? -mu : mu;
  };
  std::int64_t total = 0;
  for (unsigned d = 1; d <= k; ++d) {
    if (k % d) continue;
    std::int64_t pw = 1;
    for (unsigned i = 0; i < k / d; ++i) pw *= static_cast<std::int64_t>(p);
    total += mobius(d) * pw;
  }
  return static_cast<std::uint64_t>(total / k);
}

// Coefficients of prod 1/(1 - t^size) over all block specs.
std::vector<std::uint64_t> class_count_series(std::uint64_t p, std::size_t max_m) {
  std::vector<std::uint64_t> c(max_m + 1, 0);
  c[0] = 1;
  auto multiply = [&](std::size_t size) {
    for (std::size_t i = size; i <= max_m; ++i) c[i] += c[i - size];
  };
  for (std::size_t d = 1; 2 * d - 1 <= max_m; ++d) multiply(2 * d - 1);
  for (unsigned k = 1; 2 * k <= max_m; ++k) {
    const std::uint64_t points = necklace(p, k) + (k == 1 ? 1 : 0);
    for (std::size_t d = 1; 2 * d * k <= max_m; ++d)
      for (std::uint64_t i = 0; i < points; ++i) multiply(2 * d * k);
  }
  return c;
}

}  // namespace

TEST_CASE("dual is an involution and doubling is skew") {
  std::mt19937_64 rng(21);
  const Prime p(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d1 = rng() % 4, d2 = rng() % 4;
    const QuiverRep r = pencil(any_matrix(p, d2, d1, rng), any_matrix(p, d2, d1, rng));
    CHECK(dual(dual(r)) == r);
    CHECK(dual(r).d1() == r.d2());
    const SkewTuple s = self_dual_double(r);
    CHECK(s.size() == d1 + d2);
  }
  const QuiverRep r = pencil(Matrix(p, {{1, 2}}), Matrix(p, {{0, 3}}));
  const SkewTuple s = self_dual_double(r);
  CHECK(s[0] == Matrix(p, {{0, 1, 2}, {4, 0, 0}, {3, 0, 0}}));
  CHECK_THROWS_AS((void)self_dual_double(pencil(Matrix(Prime(2), {{1}}), Matrix(Prime(2), {{0}}))),
                  UnsupportedCharacteristic);
}

TEST_CASE("indecomposable pencils") {
  const Prime p3(3), p5(5);
  const QuiverRep minimal = indecomposable(eps(p3, 2));
  CHECK(minimal.d1() == 2);
  CHECK(minimal.d2() == 1);
  CHECK(minimal[0] == Matrix(p3, {{1, 0}}));
  CHECK(minimal[1] == Matrix(p3, {{0, 1}}));
  CHECK(indecomposable(eps(p3, 1)).d2() == 0);

  const QuiverRep at_inf = indecomposable(inf(p3, 2));
  CHECK(at_inf[0] == frobenius_matrix(Poly::monomial(p3, 2)));
  CHECK(at_inf[1] == Matrix::identity(p3, 2));

  // x1 - 2 x2 has coefficients (3, 1) by x1-degree at p = 5.
  const QuiverRep r = indecomposable({ProjPoint::point(HomPoly(p5, 1, {3, 1})), 1});
  CHECK(r[0] == Matrix(p5, {{1}}));
  CHECK(r[1] == Matrix(p5, {{2}}));

  const QuiverRep plus = plus_indecomposable(p3, 3);
  CHECK(plus.d1() == 2);
  CHECK(plus.d2() == 3);
  CHECK(plus[0] == indecomposable(eps(p3, 3))[0].transpose());
}

TEST_CASE("characteristic forms of regular blocks") {
  const Prime p(3);
  for (unsigned deg = 1; deg <= 3; ++deg) {
    for (const Poly& f : all_monic(p, deg)) {
      for (unsigned d = 1; d <= 4; ++d) {
        Poly fd = Poly::constant(p, 1);
        for (unsigned i = 0; i < d; ++i) fd = fd * f;
        const QuiverRep r = pencil(Matrix::identity(p, deg * d), frobenius_matrix(fd));
        CHECK(hom_char_poly(r) == HomPoly::homogenize(fd, deg * d));
      }
    }
  }
  for (unsigned d = 1; d <= 4; ++d) {
    // det(x1 N - x2 I) for nilpotent N is (-x2)^d.
    std::vector<Residue> c(d + 1, 0);
    c[0] = d % 2 ? p.neg(1) : 1;
    CHECK(hom_char_poly(indecomposable(inf(p, d))) == HomPoly(p, d, c));
  }
  CHECK(hom_char_poly(pencil(Matrix(p, 0, 0), Matrix(p, 0, 0))) == HomPoly(p, 0, {1}));
}

TEST_CASE("Kronecker invariants of small pencils") {
  const Prime p(3);
  const Poly x_minus_1(p, {2, 1});
  const Matrix f = frobenius_matrix(x_minus_1 * x_minus_1);
  const KroneckerData k = kronecker_invariants(pencil(Matrix::identity(p, 2), f));
  REQUIRE(k.elem_divisors.size() == 1);
  CHECK(k.elem_divisors[0].first == ProjPoint::finite(x_minus_1));
  CHECK(k.elem_divisors[0].second == 2);
  CHECK(k.col_min_indices.empty());
  CHECK(k.row_min_indices.empty());

  // Brute force: no base change turns (I, F((x-1)^2)) into (I, I).
  std::vector<Invertible> gl2;
  for (Residue a = 0; a < 3; ++a)
    for (Residue b = 0; b < 3; ++b)
      for (Residue c = 0; c < 3; ++c)
        for (Residue d = 0; d < 3; ++d) {
          const Matrix m(p, {{a, b}, {c, d}});
          if (det(m) != 0) gl2.emplace_back(m);
        }
  REQUIRE(gl2.size() == 48);
  bool split_reachable = false;
  for (const auto& P : gl2)
    for (const auto& Q : gl2)
      if (P.matrix() * Q.matrix() == Matrix::identity(p, 2) &&
          P.matrix() * f * Q.matrix() == Matrix::identity(p, 2))
        split_reachable = true;
  CHECK_FALSE(split_reachable);
  const KroneckerData split = kronecker_invariants(pencil(Matrix::identity(p, 2), Matrix::identity(p, 2)));
  CHECK(split.elem_divisors.size() == 2);

  const KroneckerData singular = kronecker_invariants(indecomposable(eps(p, 3)));
  CHECK(singular.col_min_indices == std::vector<unsigned>{2});
  CHECK(singular.row_min_indices.empty());
  const KroneckerData transposed = kronecker_invariants(dual(indecomposable(eps(p, 3))));
  CHECK(transposed.row_min_indices == std::vector<unsigned>{2});
  CHECK(transposed.col_min_indices.empty());

  const KroneckerData zero = kronecker_invariants(pencil(Matrix(p, 0, 2), Matrix(p, 0, 2)));
  CHECK(zero.col_min_indices == std::vector<unsigned>{0, 0});
  const KroneckerData at_inf = kronecker_invariants(indecomposable(inf(p, 3)));
  REQUIRE(at_inf.elem_divisors.size() == 1);
  CHECK(at_inf.elem_divisors[0].first.is_infinity());
  CHECK(at_inf.elem_divisors[0].second == 3);
}

TEST_CASE("elementary divisors match Jordan ranks") {
  std::mt19937_64 rng(22);
  for (std::uint32_t pv : {3u, 5u}) {
    const Prime p(pv);
    for (int t = 0; t < 300; ++t) {
      const std::size_t n = 1 + rng() % 6;
      Matrix m = any_matrix(p, n, n, rng);
      if (t % 2 == 0) {
        // Bias towards repeated eigenvalues.
        m = Matrix::identity(p, n).scaled(any_residue(p, rng));
        for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = rng() % 2;
        const Invertible s = any_invertible(p, n, rng);
        m = s.matrix() * m * s.inverse();
      }
      const KroneckerData k = kronecker_invariants(pencil(Matrix::identity(p, n), m));
      CHECK(as_counts(k) == jordan_divisors(m));
      CHECK(k.col_min_indices.empty());
    }
  }
}

TEST_CASE("Kronecker invariants are stable under strict equivalence") {
  std::mt19937_64 rng(23);
  const Prime p(3);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = rng() % 5, c = rng() % 5;
    const Matrix a = any_matrix(p, r, c, rng), b = any_matrix(p, r, c, rng);
    const Invertible P = any_invertible(p, r, rng), Q = any_invertible(p, c, rng);
    const KroneckerData k0 = kronecker_invariants(pencil(a, b));
    const KroneckerData k1 =
        kronecker_invariants(pencil(P.matrix() * a * Q.matrix(), P.matrix() * b * Q.matrix()));
    CHECK(k0 == k1);
    // Sizes add up: eps_k is k x (k+1), eta_k is (k+1) x k.
    std::size_t rows = 0, cols = 0;
    for (unsigned e : k0.col_min_indices) rows += e, cols += e + 1;
    for (unsigned e : k0.row_min_indices) rows += e + 1, cols += e;
    for (const auto& [pt, e] : k0.elem_divisors) rows += e * pt.degree(), cols += e * pt.degree();
    CHECK(rows == r);
    CHECK(cols == c);
  }
}

TEST_CASE("congruence invariants") {
  std::mt19937_64 rng(24);
  for (std::uint32_t pv : {3u, 5u, 7u}) {
    const Prime p(pv);
    for (int t = 0; t < 350; ++t) {
      const std::size_t m = 1 + rng() % 7;
      const SkewTuple a = any_skew(p, m, 2, rng, t % 3 == 0 ? 0.3 : 1.0);
      const ClassFunction rho = skew_pair_invariants(a);
      CHECK(rho.total_size() == m);
      CHECK(skew_pair_invariants(congr_act(any_invertible(p, m, rng), a)) == rho);
    }
  }
  CHECK_THROWS_AS((void)skew_pair_invariants(SkewTuple::zero(Prime(2), 2, 2)),
                  UnsupportedCharacteristic);
}

TEST_CASE("canonical pairs round trip") {
  for (std::uint32_t pv : {3u, 5u}) {
    const Prime p(pv);
    for (std::size_t m = 1; m <= (pv == 3 ? 6u : 4u); ++m) {
      for (const ClassFunction& rho : all_class_functions(p, m)) {
        const SkewTuple c = canonical_pair(rho);
        CHECK(c.size() == m);
        CHECK(skew_pair_invariants(c) == rho);
      }
    }
  }
}

TEST_CASE("class functions are counted by the block generating function") {
  for (std::uint32_t pv : {3u, 5u}) {
    const auto series = class_count_series(pv, 6);
    for (std::size_t m = 1; m <= 6; ++m) CHECK(all_class_functions(Prime(pv), m).size() == series[m]);
  }
  CHECK(class_count_series(3, 6) == std::vector<std::uint64_t>{1, 1, 5, 6, 23, 28, 89});
}

TEST_CASE("canonical block shapes") {
  const Prime p(3);
  CHECK(canonical_block(eps(p, 1)) == SkewTuple::zero(p, 1, 2));
  const SkewTuple e2 = canonical_block(eps(p, 2));
  CHECK(e2.size() == 3);
  CHECK(e2 == self_dual_double(plus_indecomposable(p, 2)));
  const SkewTuple i1 = canonical_block(inf(p, 1));
  CHECK(i1[0] == Matrix(p, {{0, 0}, {0, 0}}));
  CHECK(i1[1] == Matrix(p, {{0, 1}, {2, 0}}));
  CHECK(canonical_block(fin(Poly(p, {1, 0, 1}), 1)).size() == 4);
}

TEST_CASE("transforms reach the canonical pair") {
  std::mt19937_64 rng(25);
  for (std::uint32_t pv : {3u, 5u}) {
    const Prime p(pv);
    for (int t = 0; t < 150; ++t) {
      const std::size_t m = 1 + rng() % 6;
      const SkewTuple a = any_skew(p, m, 2, rng, t % 2 ? 0.4 : 1.0);
      const CongruenceTransform tr = congruence_transform(a);
      CHECK(congr_act(tr.P, a) == canonical_pair(tr.rho));
      CHECK(tr.rho == skew_pair_invariants(a));
    }
  }
}

TEST_CASE("the three-form example is indecomposable") {
  for (std::uint32_t pv : {3u, 5u, 7u}) {
    const Prime p(pv);
    const SkewTuple a(p, 3,
                      {Matrix(p, {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}),
                       Matrix(p, {{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}),
                       Matrix(p, {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}})});
    CHECK(endomorphism_space(as_rep(a)).size() == 1);
    const SkewTuple twice = block_diag(std::vector<SkewTuple>{a, a}, p, 3);
    CHECK(endomorphism_space(as_rep(twice)).size() >= 4);
  }
}

TEST_CASE("regular blocks are isomorphic to their duals") {
  const Prime p(5);
  for (unsigned deg = 1; deg <= 2; ++deg) {
    for (const Poly& f : irreducibles_up_to(p, deg)) {
      if (static_cast<unsigned>(f.degree()) != deg) continue;
      for (unsigned d = 1; d <= 2; ++d) {
        const QuiverRep r = indecomposable(fin(f, d));
        const auto iso = find_isomorphism(dual(r), r);
        REQUIRE(iso.has_value());
        for (std::size_t i = 0; i < 2; ++i)
          CHECK(iso->second.matrix() * dual(r)[i] == r[i] * iso->first.matrix());
      }
    }
  }
  CHECK_FALSE(find_isomorphism(indecomposable(inf(p, 1)), indecomposable(fin(Poly(p, {0, 1}), 1)))
                  .has_value());
}

TEST_CASE("polynomial square roots") {
  std::mt19937_64 rng(26);
  for (std::uint32_t pv : {3u, 5u, 7u}) {
    const Prime p(pv);
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 1 + rng() % 6;
      // Unipotent matrices always have a polynomial square root.
      Matrix u = Matrix::identity(p, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) u(i, j) = any_residue(p, rng);
      const Invertible s = any_invertible(p, n, rng);
      u = s.matrix() * u * s.inverse();
      const auto root = polynomial_sqrt(u);
      REQUIRE(root.has_value());
      CHECK(*root * *root == u);
      CHECK(*root * u == u * *root);

      const Matrix w = any_invertible(p, n, rng).matrix();
      const Matrix sq = w * w;
      if (const auto r2 = polynomial_sqrt(sq)) CHECK(*r2 * *r2 == sq);
    }
  }
  const Prime p3(3);
  CHECK_FALSE(polynomial_sqrt(Matrix(p3, {{2}})).has_value());
  CHECK_FALSE(polynomial_sqrt(Matrix(p3, {{2, 0}, {0, 2}})).has_value());
  CHECK(polynomial_sqrt(Matrix(p3, {{1}})).has_value());
}
