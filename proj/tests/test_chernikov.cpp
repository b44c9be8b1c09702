#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "pencilform/chernikov.hpp"
#include "pencilform/error.hpp"
#include "pencilform/pencil.hpp"
#include "pencilform/weakcong.hpp"

using namespace pencilform;
using namespace pencilform::testing;

namespace {

GroupElement any_element(const GroupModel& g, unsigned max_e, std::mt19937_64& rng) {
  const Prime& p = g.modulus();
  GroupElement u = g.identity();
  for (auto& b : u.bottom) {
    const unsigned e = static_cast<unsigned>(rng() % (max_e + 1));
    std::uint64_t pe = 1;
    for (unsigned i = 0; i < e; ++i) pe *= p.value();
    b = PruferElem(p, rng() % pe, e);
  }
  for (auto& h : u.top) h = any_residue(p, rng);
  return u;
}

ClassFunction single(const BlockSpec& spec, unsigned mult = 1) {
  ClassFunction rho(spec.point.modulus());
  rho.add(spec, mult);
  return rho;
}

Relation rel(std::size_t block, std::size_t i, std::size_t j, Vec v) { return {block, i, j, std::move(v)}; }

}  // namespace

TEST_CASE("quasi-cyclic arithmetic") {
  const Prime p(3);
  const PruferElem third(p, 3, 2);
  CHECK(third == PruferElem(p, 1, 1));
  CHECK(third.order() == 3);
  CHECK(PruferElem(p, 9, 2).is_zero());
  CHECK(PruferElem(p, 10, 2) == PruferElem(p, 1, 2));
  const PruferElem x(p, 4, 3);  // 4/27
  CHECK(x.order() == 27);
  CHECK(x + (-x) == PruferElem(p));
  CHECK(x.times(27).is_zero());
  CHECK(x.times(9) == PruferElem(p, 1, 1));
  CHECK(PruferElem(p, 2, 2) + PruferElem(p, 7, 2) == PruferElem(p, 0, 0));
  CHECK(PruferElem(p, 1, 1) - PruferElem(p, 1, 2) == PruferElem(p, 2, 2));
  CHECK(PruferElem::from_torsion(p, 2) == PruferElem(p, 2, 1));
}

TEST_CASE("group law examples") {
  const Prime p(3);
  const GroupModel g(SkewTuple(p, 2, {Matrix(p, {{0, 1}, {2, 0}})}));
  const GroupElement h1 = g.generator(0), h2 = g.generator(1);
  const GroupElement s = g_add(g, h1, h2);
  CHECK(s.top == Vec{1, 1});
  CHECK(s.bottom[0] == PruferElem(p, 1, 1));
  CHECK(g_add(g, h2, h1).bottom[0].is_zero());
  CHECK(commutator(g, h1, h2).bottom[0] == PruferElem(p, 1, 1));
  CHECK(commutator(g, h1, h2).top == Vec{0, 0});
  CHECK(commutator(g, h2, h1).bottom[0] == PruferElem(p, 2, 1));
  CHECK(element_order(g, h1) == 3);
  CHECK(element_order(g, s) == 3);
  CHECK(element_order(g, g.bottom_unit(0, 2)) == 9);
  CHECK(element_order(g, g.identity()) == 1);
  CHECK(bounded_elements(g, 1).size() == 27);
  CHECK(bounded_elements(g, 2).size() == 81);
  CHECK_THROWS_AS(GroupModel(SkewTuple::zero(Prime(2), 2, 2)), UnsupportedCharacteristic);
}

TEST_CASE("group laws on random elements") {
  std::mt19937_64 rng(51);
  for (std::uint32_t pv : {3u, 5u}) {
    const Prime p(pv);
    for (int t = 0; t < 100; ++t) {
      const std::size_t m = 1 + rng() % 4, n = 1 + rng() % 2;
      const SkewTuple forms = any_skew(p, m, n, rng);
      const GroupModel g(forms);
      for (int k = 0; k < 20; ++k) {
        const GroupElement u = any_element(g, 3, rng), v = any_element(g, 3, rng),
                           w = any_element(g, 3, rng);
        CHECK(g_add(g, g_add(g, u, v), w) == g_add(g, u, g_add(g, v, w)));
        CHECK(g_add(g, u, g_neg(g, u)) == g.identity());
        CHECK(g_add(g, g_neg(g, u), u) == g.identity());
        const GroupElement c = commutator(g, u, v);
        CHECK(c.top == Vec(m, 0));
        for (std::size_t l = 0; l < n; ++l) {
          Residue expect = 0;
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
              expect = p.add(expect, p.mul(p.mul(u.top[i], v.top[j]), forms[l](i, j)));
          CHECK(c.bottom[l] == PruferElem::from_torsion(p, expect));
        }
        const GroupElement central = g_add(g, g.identity(), GroupElement{u.bottom, Vec(m, 0)});
        CHECK(g_add(g, central, v) == g_add(g, v, central));
        // A nonzero top element has order exactly p modulo the bottom.
        if (u.top != Vec(m, 0)) CHECK(g_times(g, u, pv).top == Vec(m, 0));
      }
    }
  }
}

TEST_CASE("presentation examples") {
  const Prime p(3);
  CHECK(build_presentation(single({ProjPoint::eps(p), 1})).relations.empty());
  CHECK(build_presentation(single({ProjPoint::infinity(p), 1})).relations ==
        std::vector<Relation>{rel(1, 1, 2, {0, 1})});
  CHECK(build_presentation(single({ProjPoint::eps(p), 2})).relations ==
        std::vector<Relation>{rel(1, 1, 3, {1, 0}), rel(1, 2, 3, {0, 1})});
  CHECK(build_presentation(single({ProjPoint::infinity(p), 2})).relations ==
        std::vector<Relation>{rel(1, 1, 3, {0, 1}), rel(1, 2, 3, {1, 0}), rel(1, 2, 4, {0, 1})});
  // f = x^2 + 1: lambda_1 = 0, lambda_2 = 1.
  CHECK(build_presentation(single({ProjPoint::finite(Poly(p, {1, 0, 1})), 1})).relations ==
        std::vector<Relation>{rel(1, 1, 3, {1, 0}), rel(1, 1, 4, {0, 2}), rel(1, 2, 3, {0, 1}),
                              rel(1, 2, 4, {1, 0})});

  const Prime p5(5);
  const Presentation lin = build_presentation(single({ProjPoint::finite(Poly(p5, {3, 1})), 1}));
  CHECK(presentation_text(lin) == "p=5 n=2\ngen h1_1\ngen h1_2\nrel [h1_1, h1_2] = 1*a1 + 2*a2\n");

  const Presentation n1 = presentation_n1(p, 2, 1);
  CHECK(n1.generator_count() == 5);
  CHECK(n1.relations == std::vector<Relation>{rel(1, 1, 3, {1}), rel(1, 2, 4, {1})});
  CHECK(presentation_forms(n1) == n1_tuple(p, 2, 1));
  CHECK(verify_presentation(GroupModel(n1_tuple(p, 2, 1)), n1).pass);

  ClassFunction two(p);
  two.add({ProjPoint::eps(p), 2});
  two.add({ProjPoint::infinity(p), 1});
  const Presentation pres = build_presentation(two);
  CHECK(pres.block_sizes == std::vector<std::size_t>{3, 2});
  CHECK(pres.global_index(2, 1) == 3);
  CHECK(pres.relations.back() == rel(2, 1, 2, {0, 1}));
}

TEST_CASE("presentations describe the canonical groups") {
  for (std::uint32_t pv : {3u, 5u}) {
    const Prime p(pv);
    for (std::size_t m = 1; m <= 6; ++m) {
      for (const ClassFunction& rho : all_class_functions(p, m)) {
        const Presentation pres = build_presentation(rho);
        CHECK(presentation_forms(pres) == canonical_pair(rho));
        if (m <= 5) CHECK(verify_presentation(GroupModel(canonical_pair(rho)), pres).pass);
      }
    }
  }
}

TEST_CASE("a mutated relation is caught") {
  std::mt19937_64 rng(52);
  const Prime p(5);
  for (const ClassFunction& rho : all_class_functions(p, 4)) {
    Presentation pres = build_presentation(rho);
    if (pres.relations.empty()) continue;  // only eps_1 blocks
    Relation& r = pres.relations[rng() % pres.relations.size()];
    r.value[rng() % 2] += 1 + rng() % 4;
    r.value[0] %= 5;
    r.value[1] %= 5;
    const auto report = verify_presentation(GroupModel(canonical_pair(rho)), pres);
    CHECK_FALSE(report.pass);
    REQUIRE(report.pair.has_value());
    CHECK(report.pair->first == pres.global_index(r.block, r.i));
    CHECK(report.pair->second == pres.global_index(r.block, r.j));
  }
}

TEST_CASE("isomorphism decisions") {
  std::mt19937_64 rng(53);
  const Prime p(3);
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = 1 + rng() % 4;
    const SkewTuple a = any_skew(p, m, 2, rng);
    const Invertible P = any_invertible(p, m, rng), Q = any_invertible(p, 2, rng);
    const SkewTuple b = congr_act(P, tuple_act(a, Q));
    CHECK(decide_isomorphic(a, b));
    const auto cert = find_certificate(a, b);
    REQUIRE(cert.has_value());
    CHECK(congr_act(cert->P, tuple_act(a, cert->Q)) == b);
    const GroupModel ga(a), gb(b);
    const IsomorphismMap phi(ga, gb, cert->P, cert->Q);
    const auto check = check_isomorphism_map(phi, ga, gb, 2);
    CHECK(check.pass);
  }
  const SkewTuple zero = SkewTuple::zero(p, 2, 2);
  const SkewTuple one(p, 2, {Matrix(p, {{0, 1}, {2, 0}}), Matrix(p, 2, 2)});
  const SkewTuple other(p, 2, {Matrix(p, 2, 2), Matrix(p, {{0, 2}, {1, 0}})});
  CHECK_FALSE(decide_isomorphic(zero, one));
  CHECK(decide_isomorphic(one, other));
  CHECK_FALSE(find_certificate(zero, one).has_value());
  CHECK_FALSE(decide_isomorphic(zero, SkewTuple::zero(p, 3, 2)));
}

TEST_CASE("a wrong map fails the homomorphism check") {
  const Prime p(3);
  const SkewTuple a(p, 2, {Matrix(p, {{0, 1}, {2, 0}}), Matrix(p, 2, 2)});
  const SkewTuple b(p, 2, {Matrix(p, 2, 2), Matrix(p, {{0, 1}, {2, 0}})});
  const GroupModel ga(a), gb(b);
  // P = I, Q = I does not carry a to b.
  CHECK_THROWS_AS(IsomorphismMap(ga, gb, Invertible::identity(p, 2), Invertible::identity(p, 2)),
                  ContractError);
}

TEST_CASE("finite direct factors") {
  const Prime p(3);
  ClassFunction rho(p);
  rho.add({ProjPoint::eps(p), 1}, 2);
  rho.add({ProjPoint::finite(Poly(p, {1, 1})), 1});
  rho.add({ProjPoint::finite(Poly(p, {2, 1})), 1});
  const FiniteSplit s = finite_factor_split(rho);
  CHECK(s.k_finite == 2);
  CHECK(s.rest.total_size() == 4);
  REQUIRE(s.special.has_value());
  CHECK(*s.special == std::pair<unsigned, unsigned>{1, 1});

  ClassFunction lit(p);
  lit.add({ProjPoint::point(HomPoly::x1(p)), 1}, 2);
  lit.add({ProjPoint::infinity(p), 1}, 3);
  REQUIRE(finite_factor_split(lit).special.has_value());
  CHECK(*finite_factor_split(lit).special == std::pair<unsigned, unsigned>{2, 3});

  const FiniteSplit only_eps = finite_factor_split(single({ProjPoint::eps(p), 1}, 3));
  CHECK(only_eps.k_finite == 3);
  CHECK(only_eps.rest.empty());
  CHECK(*only_eps.special == std::pair<unsigned, unsigned>{0, 0});

  CHECK_FALSE(finite_factor_split(single({ProjPoint::eps(p), 2})).special.has_value());
  CHECK_FALSE(finite_factor_split(single({ProjPoint::infinity(p), 2})).special.has_value());
  CHECK_FALSE(finite_factor_split(single({ProjPoint::finite(Poly(p, {1, 0, 1})), 1})).special.has_value());
  ClassFunction three(p);
  for (Residue c = 0; c < 3; ++c) three.add({ProjPoint::finite(Poly(p, {c, 1})), 1});
  CHECK_FALSE(finite_factor_split(three).special.has_value());
}
