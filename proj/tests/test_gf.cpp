#include <algorithm>
#include <map>
#include <set>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "pencilform/error.hpp"
#include "pencilform/gf.hpp"
#include "pencilform/guard.hpp"
#include "pencilform/poly.hpp"

using namespace pencilform;
using namespace pencilform::testing;

namespace {

// Characteristic polynomial by cofactor expansion along the first row,
// independent of the elimination used by the library.
Poly cofactor_det(const std::vector<std::vector<Poly>>& m, const Prime& p) {
  const std::size_t n = m.size();
  if (n == 0) return Poly::constant(p, 1);
  Poly acc(p);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Poly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(std::move(row));
    }
    const Poly term = m[0][c] * cofactor_det(minor, p);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

Poly cofactor_char_poly(const Matrix& a) {
  const Prime& p = a.modulus();
  std::vector<std::vector<Poly>> m(a.rows(), std::vector<Poly>(a.cols(), Poly(p)));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      m[i][j] = Poly::constant(p, p.neg(a(i, j)));
      if (i == j) m[i][j] = m[i][j] + Poly::x(p);
    }
  }
  return cofactor_det(m, p);
}

int mobius(unsigned n) {
  int result = 1;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

// Number of monic irreducibles of degree d: (1/d) sum_{k | d} mu(k) p^{d/k}.
std::int64_t necklace_count(std::int64_t p, unsigned d) {
  std::int64_t total = 0;
  for (unsigned k = 1; k <= d; ++k) {
    if (d % k) continue;
    std::int64_t pw = 1;
    for (unsigned i = 0; i < d / k; ++i) pw *= p;
    total += mobius(k) * pw;
  }
  return total / d;
}

}  // namespace

TEST_CASE("prime validation") {
  CHECK_THROWS_AS(Prime(1), ContractError);
  CHECK_THROWS_AS(Prime(9), ContractError);
  CHECK(Prime(2).value() == 2);
  CHECK_FALSE(Prime(2).is_odd());
  CHECK_THROWS_AS(require_odd(Prime(2), "test"), UnsupportedCharacteristic);
  CHECK_NOTHROW(require_odd(Prime(3), "test"));
}

TEST_CASE("field axioms hold exhaustively for small primes") {
  for (std::uint32_t pv : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const Prime p(pv);
    for (Residue a = 0; a < pv; ++a) {
      if (a != 0) CHECK(p.mul(a, p.inv(a)) == 1);
      CHECK(p.add(a, p.neg(a)) == 0);
      for (Residue b = 0; b < pv; ++b) {
        CHECK(p.add(a, b) == p.add(b, a));
        CHECK(p.mul(a, b) == p.mul(b, a));
        CHECK(p.sub(p.add(a, b), b) == a);
        for (Residue c = 0; c < pv; ++c) {
          CHECK(p.add(p.add(a, b), c) == p.add(a, p.add(b, c)));
          CHECK(p.mul(p.mul(a, b), c) == p.mul(a, p.mul(b, c)));
          CHECK(p.mul(a, p.add(b, c)) == p.add(p.mul(a, b), p.mul(a, c)));
        }
      }
    }
    CHECK_THROWS_AS((void)p.inv(0), ContractError);
  }
}

TEST_CASE("primitive roots generate the unit group") {
  for (std::uint32_t pv : {3u, 5u, 7u, 11u, 13u, 101u}) {
    const Prime p(pv);
    const Residue g = p.primitive_root();
    std::set<Residue> seen;
    Residue x = 1;
    for (std::uint32_t i = 0; i + 1 < pv; ++i) {
      seen.insert(x);
      x = p.mul(x, g);
    }
    CHECK(seen.size() == pv - 1);
  }
}

TEST_CASE("field elements print canonical representatives") {
  const Prime p(5);
  const FieldElem minus_one(p, -1);
  CHECK(minus_one.value() == 4);
  CHECK((minus_one * minus_one).value() == 1);
  CHECK((FieldElem(p, 3) / FieldElem(p, 2)).value() == 4);
}

TEST_CASE("factorization examples") {
  const Prime p(3);
  const auto f1 = poly_factor(Poly(p, {2, 0, 1}));  // x^2 - 1
  REQUIRE(f1.size() == 2);
  CHECK(f1[0] == std::make_pair(Poly(p, {1, 1}), 1u));
  CHECK(f1[1] == std::make_pair(Poly(p, {2, 1}), 1u));
  CHECK(poly_factor(Poly::x(p)) == Factorization{{Poly::x(p), 1}});
  CHECK(poly_factor(Poly(p, {1, 0, 1})) == Factorization{{Poly(p, {1, 0, 1}), 1}});
  CHECK_THROWS_AS((void)poly_factor(Poly(p)), ContractError);
  CHECK_THROWS_AS((void)poly_factor(Poly(p, {1, 2})), ContractError);
}

TEST_CASE("x^2 + 1 has no root over F_3") {
  const Prime p(3);
  const Poly f(p, {1, 0, 1});
  for (Residue a = 0; a < 3; ++a) CHECK(f.eval(a) != 0);
  CHECK(is_irreducible(f));
}

TEST_CASE("factorizations multiply back to the input") {
  std::mt19937_64 rng(101);
  for (std::uint32_t pv : {3u, 5u, 7u}) {
    const Prime p(pv);
    for (int t = 0; t < 1000; ++t) {
      const Poly f = any_monic(p, 1 + static_cast<unsigned>(rng() % 6), rng);
      const auto fac = poly_factor(f);
      Poly prod = Poly::constant(p, 1);
      for (std::size_t i = 0; i < fac.size(); ++i) {
        const auto& [g, e] = fac[i];
        CHECK(g.is_monic());
        CHECK(is_irreducible(g));
        if (i > 0) CHECK(fac[i - 1].first < g);
        for (unsigned k = 0; k < e; ++k) prod = prod * g;
      }
      CHECK(prod == f);
    }
  }
}

TEST_CASE("companion matrix layout") {
  const Prime p(3);
  CHECK(frobenius_matrix(Poly::x(p)) == Matrix(p, {{0}}));
  CHECK(frobenius_matrix(Poly::monomial(p, 2)) == Matrix(p, {{0, 0}, {1, 0}}));
  CHECK_THROWS_AS((void)frobenius_matrix(Poly(p, {1, 2})), ContractError);
  const Prime p5(5);
  const Poly f(p5, {1, 1, 1});
  CHECK(cofactor_char_poly(frobenius_matrix(f)) == f);
  CHECK(char_poly(frobenius_matrix(f)) == f);
}

TEST_CASE("companion matrices have the right characteristic polynomial") {
  const Prime p(3);
  for (unsigned d = 1; d <= 4; ++d) {
    for (const auto& f : all_monic(p, d)) {
      const Matrix c = frobenius_matrix(f);
      CHECK(cofactor_char_poly(c) == f);
      CHECK(char_poly(c) == f);
    }
  }
}

TEST_CASE("characteristic polynomial agrees with cofactor expansion") {
  std::mt19937_64 rng(7);
  for (std::uint32_t pv : {3u, 5u, 7u}) {
    const Prime p(pv);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 1 + rng() % 5;
      const Matrix sq = any_matrix(p, n, n, rng);
      CHECK(char_poly(sq) == cofactor_char_poly(sq));
    }
  }
}

TEST_CASE("irreducible enumeration") {
  const Prime p(3);
  const auto& lin = irreducibles_up_to(p, 1);
  CHECK(lin == std::vector<Poly>{Poly(p, {0, 1}), Poly(p, {1, 1}), Poly(p, {2, 1})});
  const auto& quad = irreducibles_up_to(p, 2);
  CHECK(std::find(quad.begin(), quad.end(), Poly(p, {1, 0, 1})) != quad.end());
  CHECK(std::count_if(quad.begin(), quad.end(), [](const Poly& f) { return f.degree() == 2; }) == 3);
  CHECK(std::is_sorted(quad.begin(), quad.end()));

  for (std::uint32_t pv : {2u, 3u, 5u}) {
    const Prime q(pv);
    const auto& all = irreducibles_up_to(q, 4);
    std::map<int, std::int64_t> by_degree;
    for (const auto& f : all) ++by_degree[f.degree()];
    for (unsigned d = 1; d <= 4; ++d) CHECK(by_degree[static_cast<int>(d)] == necklace_count(pv, d));
  }
  CHECK_THROWS_AS((void)irreducibles_up_to(Prime(101), 4), ResourceGuardError);
}

TEST_CASE("polynomial arithmetic") {
  const Prime p(5);
  const Poly a(p, {1, 2, 3});
  const Poly b(p, {4, 1});
  const auto [q, r] = a.divmod(b);
  CHECK(q * b + r == a);
  CHECK(r.degree() < b.degree());
  const auto e = ext_gcd(a, b);
  CHECK(e.s * a + e.t * b == e.g);
  CHECK((inverse_mod(b, a) * b) % a == Poly::constant(p, 1));
  CHECK(powmod(Poly::x(p), 5, Poly(p, {0, 0, 0, 1})) == Poly(p));
  CHECK(Poly(p, {0, 1, 0, 0}).degree() == 1);
}

TEST_CASE("homogeneous forms") {
  const Prime p(3);
  const HomPoly g = HomPoly::homogenize(Poly(p, {2, 1}), 1);
  CHECK(g.to_string() == "x1+2*x2");
  CHECK(HomPoly::x2(p).to_string() == "x2");
  CHECK(g.dehomogenize() == Poly(p, {2, 1}));
  // x1 -> x2, x2 -> x1
  CHECK(HomPoly::x2(p).substitute(0, 1, 1, 0) == HomPoly::x1(p));
  CHECK(HomPoly::homogenize(Poly(p, {1, 0, 1}), 2).to_string() == "x1^2+x2^2");
}
