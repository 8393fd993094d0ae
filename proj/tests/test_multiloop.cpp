#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "mloop/errors.hpp"
#include "mloop/multiloop.hpp"

using namespace mloop;

namespace {

VecC unit_c(std::size_t dim, std::size_t i) {
  VecC v(dim, Cyclo(0));
  v[i] = Cyclo(1);
  return v;
}

LoopContext f1() {
  auto sl2 = std::make_shared<ChevalleyAlgebra>(Series::A, 1);
  auto sigma = make_torus_automorphism(*sl2, {Cyclo(-1)});
  return make_loop_context(sl2, make_family(*sl2, {sigma}, {2}));
}

LoopContext f2() {
  auto sl3 = std::make_shared<ChevalleyAlgebra>(Series::A, 2);
  auto eta = make_neg_transpose(*sl3);
  return make_loop_context(sl3, make_family(*sl3, {eta}, {2}));
}

LoopContext f3() {
  auto sl2 = std::make_shared<ChevalleyAlgebra>(Series::A, 1);
  auto id = check_automorphism(*sl2, MatC::identity(3));
  return make_loop_context(sl2, make_family(*sl2, {id}, {1}));
}

const std::size_t H = 0, F = 1, E = 2;  // sl2 basis layout

}  // namespace

TEST_CASE("context construction and structural equality") {
  auto c1 = f1(), c1b = f1(), c3 = f3();
  CHECK(same_context(c1, c1b));
  CHECK(!same_context(c1, c3));
  CHECK(!same_context(c1, f2()));
  CHECK(c1.vars() == 1);
  CHECK(c1.grading.components.at({0}).size() == 1);
  CHECK(c1.grading.components.at({1}).size() == 2);

  CHECK_NOTHROW(check_points(c1, {{{Cyclo::zeta(8)}}}));
  CHECK_THROWS_AS(check_points(c1, {{{Cyclo(1), Cyclo(1)}}}),
                  DimensionMismatch);
  CHECK_THROWS_AS(check_points(c1, {{{Cyclo(0)}}}), InvalidEntries);
}

TEST_CASE("element validation enforces per-term homogeneity") {
  auto ctx = f1();
  auto ok = element_check(ctx, {{{1}, unit_c(3, E)}});
  CHECK(ok.terms.size() == 1);
  CHECK_THROWS_AS(element_check(ctx, {{{0}, unit_c(3, E)}}), NotHomogeneous);
  CHECK_THROWS_AS(element_check(ctx, {{{3}, unit_c(3, H)}}), NotHomogeneous);
  CHECK(element_check(ctx, {}).is_zero());

  // duplicate exponents merge; cancellation yields the zero element
  VecC minus_e(3, Cyclo(0));
  minus_e[E] = Cyclo(-1);
  CHECK(element_check(ctx, {{{1}, unit_c(3, E)}, {{1}, minus_e}}).is_zero());

  // negative exponents reduce mod the orders
  CHECK_NOTHROW(element_check(ctx, {{{-1}, unit_c(3, F)}}));
  CHECK_NOTHROW(element_check(ctx, {{{-2}, unit_c(3, H)}}));

  // mixtures inside one component are fine
  VecC ef = unit_c(3, E);
  ef[F] = Cyclo(7);
  CHECK_NOTHROW(element_check(ctx, {{{1}, ef}}));
  CHECK_THROWS_AS(element_check(ctx, {{{2}, ef}}), NotHomogeneous);

  // x (x) f expansion validates every monomial
  LaurentPoly todd = LaurentPoly::monomial({1}, Cyclo(1));
  todd.add_term({3}, Cyclo::zeta(4));
  CHECK(element_from(ctx, unit_c(3, E), todd).terms.size() == 2);
  LaurentPoly teven = todd + LaurentPoly::constant(1, Cyclo(1));
  CHECK_THROWS_AS(element_from(ctx, unit_c(3, E), teven), NotHomogeneous);
}

TEST_CASE("bracket of loop elements") {
  auto ctx = f1();
  auto e1 = element_check(ctx, {{{1}, unit_c(3, E)}});
  auto fm1 = element_check(ctx, {{{1}, unit_c(3, F)}});
  auto h0 = element_check(ctx, {{{0}, unit_c(3, H)}});

  auto efh = bracket_multiloop(ctx, e1, fm1);
  REQUIRE(efh.terms.size() == 1);
  CHECK(efh.terms.at({2}) == unit_c(3, H));

  CHECK(bracket_multiloop(ctx, e1, e1).is_zero());

  auto he = bracket_multiloop(ctx, h0, e1);
  VecC two_e(3, Cyclo(0));
  two_e[E] = Cyclo(2);
  CHECK(he.terms.at({1}) == two_e);

  auto other = f3();
  auto y = element_check(other, {{{0}, unit_c(3, E)}});
  CHECK_THROWS_AS(bracket_multiloop(ctx, e1, y),
                  Error);  // context mismatch is detected structurally
}

TEST_CASE("evaluation map and kernel membership") {
  auto untwisted = f3();
  LaurentPoly t = LaurentPoly::monomial({1}, Cyclo(1));
  auto et = element_from(untwisted, unit_c(3, E), t);
  std::vector<TorusPoint> p23{{{Cyclo(2)}}, {{Cyclo(3)}}};

  auto img = psi_evaluate(untwisted, et, p23);
  REQUIRE(img.size() == 2);
  VecC e2(3, Cyclo(0)), e3(3, Cyclo(0));
  e2[E] = Cyclo(2);
  e3[E] = Cyclo(3);
  CHECK(img[0] == e2);
  CHECK(img[1] == e3);

  auto h1 = element_from(untwisted, unit_c(3, H),
                         LaurentPoly::constant(1, Cyclo(1)));
  auto img2 = psi_evaluate(untwisted, h1, {{{Cyclo(5)}}});
  CHECK(img2[0] == unit_c(3, H));

  auto twisted = f1();
  auto et2 = element_from(twisted, unit_c(3, E), t);
  auto img3 = psi_evaluate(twisted, et2, {{{Cyclo::zeta(8)}}});
  VecC ez(3, Cyclo(0));
  ez[E] = Cyclo::zeta(8);
  CHECK(img3[0] == ez);

  CHECK(kernel_membership(untwisted, element_check(untwisted, {}), p23));
  LaurentPoly tm2 = t - LaurentPoly::constant(1, Cyclo(2));
  auto ker = element_from(untwisted, unit_c(3, E), tm2);
  CHECK(kernel_membership(untwisted, ker, {{{Cyclo(2)}}}));
  CHECK(!kernel_membership(untwisted, ker, p23));

  // twisted kernel element: f = t^3 - zeta_8^2 t vanishes at zeta_8
  LaurentPoly fodd = LaurentPoly::monomial({3}, Cyclo(1));
  fodd.add_term({1}, -Cyclo::zeta(8).pow(2));
  auto kel = element_from(twisted, unit_c(3, E), fodd);
  CHECK(kernel_membership(twisted, kel, {{{Cyclo::zeta(8)}}}));
  CHECK(!kernel_membership(twisted, element_from(twisted, unit_c(3, E), t),
                           {{{Cyclo::zeta(8)}}}));
}

TEST_CASE("evaluation is a Lie homomorphism on samples") {
  auto ctx = f1();
  std::vector<TorusPoint> pts{{{Cyclo::zeta(8)}}, {{Cyclo(2)}}};
  LaurentPoly t = LaurentPoly::monomial({1}, Cyclo(1));
  LaurentPoly t2 = LaurentPoly::monomial({2}, Cyclo(1));
  LaurentPoly todd = t + LaurentPoly::monomial({-1}, Cyclo(3));
  std::vector<MultiloopElement> samples{
      element_from(ctx, unit_c(3, E), t),
      element_from(ctx, unit_c(3, F), todd),
      element_from(ctx, unit_c(3, H), t2),
      element_from(ctx, unit_c(3, H),
                   LaurentPoly::constant(1, Cyclo::zeta(4)))};
  for (const auto& x : samples)
    for (const auto& y : samples) {
      auto lhs = psi_evaluate(ctx, bracket_multiloop(ctx, x, y), pts);
      auto ix = psi_evaluate(ctx, x, pts);
      auto iy = psi_evaluate(ctx, y, pts);
      for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(lhs[i] == ctx.algebra->bracket(ix[i], iy[i]));
    }
}

TEST_CASE("coefficient polynomials reassemble the element") {
  auto ctx = f1();
  LaurentPoly fe = LaurentPoly::monomial({1}, Cyclo(1));
  fe.add_term({3}, Cyclo(5));
  LaurentPoly fh = LaurentPoly::monomial({2}, Cyclo::zeta(4));
  VecC mix = unit_c(3, E);
  mix[F] = Cyclo(-2);
  auto x = element_check(
      ctx, {{{1}, mix}, {{3}, unit_c(3, E)}, {{2}, unit_c(3, H)}});

  auto polys = coefficient_polynomials(ctx, x);
  std::vector<std::pair<std::vector<long>, VecC>> raw;
  for (const auto& [key, poly] : polys) {
    const auto& basis = ctx.grading.components.at(key.first);
    for (const auto& [exp, c] : poly.terms()) {
      VecC v = basis[key.second];
      for (auto& entry : v) entry *= c;
      raw.emplace_back(exp, std::move(v));
    }
    // each polynomial is homogeneous of its class
    for (const auto& [exp, c] : poly.terms())
      CHECK(reduce_mod(exp, ctx.family.orders) == key.first);
  }
  CHECK(element_check(ctx, raw) == x);

  // kernel membership is equivalent to all coefficient polynomials
  // vanishing at every point
  std::vector<TorusPoint> pts{{{Cyclo::zeta(8)}}, {{Cyclo(2)}}};
  for (const auto& el :
       {x, element_from(ctx, unit_c(3, E),
                        LaurentPoly::monomial({3}, Cyclo(1)) -
                            LaurentPoly::monomial({1}, Cyclo::zeta(8).pow(2)))}) {
    bool allvanish = true;
    for (const auto& [key, poly] : coefficient_polynomials(ctx, el))
      for (const auto& p : pts)
        if (!evaluate(poly, p).is_zero()) allvanish = false;
    CHECK(kernel_membership(ctx, el, pts) == allvanish);
  }
}

TEST_CASE("window rank of the evaluation map") {
  auto untwisted = f3();
  CHECK(kernel_codimension_window(untwisted, {{{Cyclo(2)}}}, 1) == 3);
  std::vector<TorusPoint> p23{{{Cyclo(2)}}, {{Cyclo(3)}}};
  for (unsigned w : {2u, 3u, 4u})
    CHECK(kernel_codimension_window(untwisted, p23, w) == 6);

  auto twisted = f1();
  for (unsigned w : {2u, 3u})
    CHECK(kernel_codimension_window(twisted, {{{Cyclo(1)}}}, w) == 3);
  // at window 0 only the zero class contributes
  CHECK(kernel_codimension_window(twisted, {{{Cyclo::zeta(8)}}}, 0) == 1);

  // r = 2 twisted, distinct m-values 4 and zeta_4
  std::vector<TorusPoint> tp{{{Cyclo(2)}}, {{Cyclo::zeta(8)}}};
  for (unsigned w : {4u, 5u, 6u})
    CHECK(kernel_codimension_window(twisted, tp, w) == 6);

  // duplicate m-values cap the rank below r * dim g
  std::vector<TorusPoint> dup{{{Cyclo(1)}}, {{Cyclo(-1)}}};
  CHECK(kernel_codimension_window(twisted, dup, 4) < 6);

  CHECK(kernel_codimension_window(untwisted, {}, 3) == 0);
}

TEST_CASE("surjectivity witnesses hit their targets exactly") {
  auto twisted = f1();
  std::vector<TorusPoint> one{{{Cyclo(1)}}};
  auto w = surjectivity_witness(twisted, one, 0, {1}, unit_c(3, E));
  REQUIRE(w.terms.size() == 1);
  CHECK(w.terms.at({1}) == unit_c(3, E));  // e (x) t, since f_1 = 1

  auto untwisted = f3();
  std::vector<TorusPoint> p23{{{Cyclo(2)}}, {{Cyclo(3)}}};
  for (std::size_t slot = 0; slot < 2; ++slot)
    for (std::size_t b = 0; b < 3; ++b) {
      auto el = surjectivity_witness(untwisted, p23, slot, {0}, unit_c(3, b));
      auto img = psi_evaluate(untwisted, el, p23);
      for (std::size_t i = 0; i < 2; ++i) {
        if (i == slot)
          CHECK(img[i] == unit_c(3, b));
        else
          CHECK(is_zero_vector(img[i]));
      }
    }

  // twisted, r = 2, classes 0 and 1: every graded basis vector in every slot
  std::vector<TorusPoint> tp{{{Cyclo(2)}}, {{Cyclo::zeta(8)}}};
  for (std::size_t slot = 0; slot < 2; ++slot)
    for (long kk : {0L, 1L}) {
      const auto& basis = twisted.grading.components.at(
          reduce_mod({kk}, twisted.family.orders));
      for (const VecC& v : basis) {
        auto el = surjectivity_witness(twisted, tp, slot, {kk}, v);
        auto img = psi_evaluate(twisted, el, tp);
        for (std::size_t i = 0; i < 2; ++i) {
          if (i == slot)
            CHECK(img[i] == v);
          else
            CHECK(is_zero_vector(img[i]));
        }
      }
    }

  // indistinct m-values cannot be separated
  CHECK_THROWS_AS(
      surjectivity_witness(twisted, {{{Cyclo(1)}}, {{Cyclo(-1)}}}, 0, {1},
                           unit_c(3, E)),
      IndistinctClasses);
}
