#include <gtest/gtest.h>

#include <random>

#include "support/random_poly.hpp"
#include "unproj/unproj.hpp"

using namespace unproj;
using testsupport::random_monomial;
using testsupport::random_poly;
using P = Polynomial<RationalField>;
using Q = RationalField;

namespace {

P var(const RingPtr<Q>& r, const std::string& n) { return P::variable(r, n); }
P cst(const RingPtr<Q>& r, long c) { return P::constant(r, c); }

}  // namespace

TEST(MakeRing, AmbientForNEqualsOne) {
  auto r = make_ring(Q{}, {"a11", "a12", "z1", "z2"}, OrderKind::grevlex);
  EXPECT_EQ(r->size(), 4u);
  EXPECT_EQ(r->index("z1"), 2u);
  EXPECT_FALSE(r->grading().has_value());
}

TEST(MakeRing, UnivariateAndGraded) {
  auto r = make_ring(Q{}, {"x"}, OrderKind::lex);
  EXPECT_EQ(r->size(), 1u);
  auto g = make_ring(Q{}, {"a11", "a12", "z1", "z2", "T2"}, OrderKind::grevlex, Grading{0, 0, 0, 0, 1});
  ASSERT_TRUE(g->grading().has_value());
  EXPECT_EQ((*g->grading())[4], 1u);
  EXPECT_TRUE(is_homogeneous(var(g, "a11") * var(g, "T2") + var(g, "z1") * var(g, "T2")));
}

TEST(MakeRing, Errors) {
  EXPECT_THROW(make_ring(Q{}, {"x", "x"}), RingError);
  EXPECT_THROW(make_ring(Q{}, {"1x"}), RingError);
  EXPECT_THROW(make_ring(Q{}, {"x", "y"}, OrderKind::grevlex, Grading{1}), RingError);
  auto empty = make_ring(Q{}, {});
  EXPECT_EQ(empty->size(), 0u);
  auto c = cst(empty, 5) * cst(empty, 2);
  EXPECT_TRUE(c.is_constant());
  EXPECT_EQ(c, cst(empty, 10));
}

TEST(MonomialCompare, Examples) {
  auto lex = MonomialOrder::lex(2);
  EXPECT_EQ(monomial_compare(Monomial{2, 0}, Monomial{1, 1}, lex), std::strong_ordering::greater);
  auto grevlex = MonomialOrder::grevlex(2);
  EXPECT_EQ(monomial_compare(Monomial{1, 2}, Monomial{2, 1}, grevlex), std::strong_ordering::less);
  EXPECT_EQ(monomial_compare(Monomial{3, 1}, Monomial{3, 1}, grevlex), std::strong_ordering::equal);
}

TEST(MonomialCompare, GrevlexTieBreak) {
  // x*z vs y^2 in grevlex x>y>z: y^2 has the smaller z exponent, so y^2 > x*z
  auto grevlex = MonomialOrder::grevlex(3);
  EXPECT_EQ(monomial_compare(Monomial{1, 0, 1}, Monomial{0, 2, 0}, grevlex), std::strong_ordering::less);
  auto lex = MonomialOrder::lex(3);
  EXPECT_EQ(monomial_compare(Monomial{1, 0, 1}, Monomial{0, 2, 0}, lex), std::strong_ordering::greater);
}

TEST(MonomialCompare, BlockOrder) {
  // block [x] | [y, z]: any x power beats anything free of x
  auto order = MonomialOrder::block({{1, OrderKind::grevlex}, {2, OrderKind::grevlex}});
  EXPECT_EQ(monomial_compare(Monomial{1, 0, 0}, Monomial{0, 5, 5}, order), std::strong_ordering::greater);
  EXPECT_EQ(monomial_compare(Monomial{1, 2, 0}, Monomial{1, 0, 1}, order), std::strong_ordering::greater);
}

TEST(MonomialOrder, MultiplicativeWellOrder) {
  std::mt19937 rng(5);
  std::vector<MonomialOrder> orders = {MonomialOrder::lex(3), MonomialOrder::grevlex(3),
                                       MonomialOrder::block({{1, OrderKind::grevlex}, {2, OrderKind::lex}}),
                                       MonomialOrder::block({{2, OrderKind::lex}, {1, OrderKind::grevlex}})};
  for (const auto& order : orders) {
    for (int i = 0; i < 500; ++i) {
      auto a = random_monomial(rng, 3, 6), b = random_monomial(rng, 3, 6), m = random_monomial(rng, 3, 4);
      auto ab = order.compare(a, b);
      EXPECT_EQ(order.compare(a * m, b * m), ab);
      EXPECT_EQ(order.compare(b, a), 0 <=> ab);
      EXPECT_NE(order.compare(Monomial(3), a), std::strong_ordering::greater);
    }
  }
}

TEST(PolyArith, Examples) {
  auto r = make_ring(Q{}, {"x", "y"});
  auto x = var(r, "x"), y = var(r, "y");
  EXPECT_EQ((x + y) * (x - y), x * x - y * y);
  EXPECT_EQ(x + P(r), x);
  EXPECT_EQ((x + cst(r, 1)) * (x + cst(r, 1)), x * x + cst(r, 2) * x + cst(r, 1));
  EXPECT_EQ((x + y).scale(Rational(3)), cst(r, 3) * x + cst(r, 3) * y);
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_EQ((x + y).pow(3), (x + y) * (x + y) * (x + y));
  EXPECT_EQ(x.pow(0), cst(r, 1));
}

TEST(PolyArith, CanonicalForm) {
  auto r = make_ring(Q{}, {"x", "y"}, OrderKind::lex);
  std::vector<Term<Q>> terms = {{Rational(2), Monomial{0, 1}}, {Rational(3), Monomial{1, 0}},
                                {Rational(-2), Monomial{0, 1}}, {Rational(0), Monomial{2, 0}}};
  P p(r, terms);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.lead_monomial(), (Monomial{1, 0}));
  EXPECT_THROW(P(r).lead_term(), std::exception);
}

TEST(PolyArith, MixedRingsRejected) {
  auto r1 = make_ring(Q{}, {"x"});
  auto r2 = make_ring(Q{}, {"x", "y"});
  EXPECT_THROW(var(r1, "x") + var(r2, "x"), std::exception);
}

TEST(PolyArith, RingAxioms) {
  auto r = make_ring(Q{}, {"x", "y", "z"});
  std::mt19937 rng(17);
  for (int i = 0; i < 500; ++i) {
    auto a = random_poly(rng, r, 4, 5), b = random_poly(rng, r, 4, 5), c = random_poly(rng, r, 4, 5);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a - a, P(r));
    ASSERT_EQ(a * cst(r, 1), a);
  }
}

TEST(WeightedComponents, Examples) {
  auto r = make_ring(Q{}, {"a", "T"}, OrderKind::grevlex, Grading{0, 1});
  auto a = var(r, "a"), t = var(r, "T");
  auto comps = weighted_components(a + a * t + t * t);
  ASSERT_EQ(comps.size(), 3u);
  EXPECT_EQ(comps.at(0), a);
  EXPECT_EQ(comps.at(1), a * t);
  EXPECT_EQ(comps.at(2), t * t);

  auto h = a * t * t + t * t;
  auto single = weighted_components(h);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single.at(2), h);

  EXPECT_TRUE(weighted_components(P(r)).empty());
}

TEST(WeightedComponents, NeedsGrading) {
  auto r = make_ring(Q{}, {"x", "y"});
  auto f = var(r, "x") + var(r, "y") * var(r, "y");
  EXPECT_THROW(weighted_components(f), std::exception);
  auto comps = weighted_components(f, Grading{1, 1});
  EXPECT_EQ(comps.size(), 2u);
}

TEST(WeightedComponents, SumToInput) {
  auto r = make_ring(Q{}, {"x", "y", "z"}, OrderKind::grevlex, Grading{0, 1, 2});
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto f = random_poly(rng, r, 5, 8);
    P sum(r);
    for (const auto& [d, c] : weighted_components(f)) {
      EXPECT_FALSE(c.is_zero());
      EXPECT_TRUE(is_homogeneous(c));
      for (const auto& t : c.terms()) EXPECT_EQ(weighted_degree(t.monomial, *r->grading()), d);
      sum += c;
    }
    EXPECT_EQ(sum, f);
  }
}

TEST(Homogenize, Examples) {
  auto r = make_ring(Q{}, {"a11", "a12", "T1", "T2"}, OrderKind::grevlex, Grading{0, 0, 1, 1});
  auto a11 = var(r, "a11"), a12 = var(r, "a12"), t1 = var(r, "T1"), t2 = var(r, "T2");
  EXPECT_EQ(homogenize(a11 + a12 * t2, "T1", 1), a11 * t1 + a12 * t2);
  EXPECT_EQ(homogenize(t2, "T1", 1), t2);
  EXPECT_EQ(homogenize(t2 * t2, "T1", 2), t2 * t2);
  EXPECT_EQ(homogenize(t2, "T1", 3), t2 * t1 * t1);
}

TEST(Homogenize, Errors) {
  auto r = make_ring(Q{}, {"T1", "T2"}, OrderKind::grevlex, Grading{1, 1});
  auto t1 = var(r, "T1"), t2 = var(r, "T2");
  EXPECT_THROW(homogenize(t2 * t2, "T1", 1), std::invalid_argument);
  EXPECT_THROW(homogenize(t1 + t2, "T1", 2), std::invalid_argument);
}

TEST(Homogenize, DehomogenizeRoundTrip) {
  auto r = make_ring(Q{}, {"h", "x", "y", "z"}, OrderKind::grevlex, Grading{1, 1, 1, 1});
  std::mt19937 rng(23);
  auto one = cst(r, 1);
  for (int i = 0; i < 200; ++i) {
    auto f = random_poly(rng, r, 4, 6);
    // drop terms that involve h
    std::vector<Term<Q>> kept;
    for (const auto& t : f.terms())
      if (t.monomial[0] == 0) kept.push_back(t);
    P g(r, kept);
    unsigned d = g.total_degree() + (i % 3);
    auto hom = homogenize(g, "h", d);
    EXPECT_TRUE(is_homogeneous(hom));
    EXPECT_EQ(substitute_variables(hom, {{"h", one}}), g);
  }
}

TEST(Determinant, Examples) {
  auto r = make_ring(Q{}, {"a", "b", "c", "d"});
  auto a = var(r, "a"), b = var(r, "b"), c = var(r, "c"), d = var(r, "d");
  PolyMatrix<Q> id3(r, 3, 3);
  for (std::size_t i = 0; i < 3; ++i) id3.at(i, i) = cst(r, 1);
  EXPECT_EQ(determinant(id3), cst(r, 1));
  EXPECT_EQ(determinant(PolyMatrix<Q>(r, {{a, b}, {c, d}})), a * d - b * c);
  EXPECT_THROW(determinant(PolyMatrix<Q>(r, 2, 3)), std::invalid_argument);
  EXPECT_EQ(determinant(PolyMatrix<Q>(r, 0, 0)), cst(r, 1));
}

TEST(Determinant, FamilySubmatrix) {
  auto r = make_ring(Q{}, {"a11", "a12", "a13", "a21", "a22", "a23"});
  PolyMatrix<Q> m(r, {{var(r, "a11"), var(r, "a12"), var(r, "a13")}, {var(r, "a21"), var(r, "a22"), var(r, "a23")}});
  auto minor = determinant(m.without_column(0));
  EXPECT_EQ(minor, var(r, "a12") * var(r, "a23") - var(r, "a13") * var(r, "a22"));
}

TEST(Determinant, RowProperties) {
  auto r = make_ring(Q{}, {"x", "y", "z"});
  std::mt19937 rng(29);
  for (int iter = 0; iter < 60; ++iter) {
    PolyMatrix<Q> m(r, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = random_poly(rng, r, 2, 3, 9);
    auto det = determinant(m);

    auto swapped = m;
    for (std::size_t j = 0; j < 3; ++j) std::swap(swapped.at(0, j), swapped.at(2, j));
    EXPECT_EQ(determinant(swapped), -det);

    auto repeated = m;
    for (std::size_t j = 0; j < 3; ++j) repeated.at(1, j) = m.at(0, j);
    EXPECT_TRUE(determinant(repeated).is_zero());

    // Leibniz formula as an independent oracle
    const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    P leibniz(r);
    for (int p = 0; p < 6; ++p) {
      auto prod = m.at(0, perms[p][0]) * m.at(1, perms[p][1]) * m.at(2, perms[p][2]);
      leibniz = p < 3 ? leibniz + prod : leibniz - prod;
    }
    EXPECT_EQ(det, leibniz);
  }
}

TEST(Substitute, MapToRingByName) {
  auto small = make_ring(Q{}, {"y", "x"});
  auto big = make_ring(Q{}, {"t", "x", "y"});
  auto f = var(small, "x") * var(small, "y") + cst(small, 2);
  auto g = map_to_ring(f, big);
  EXPECT_EQ(g, var(big, "x") * var(big, "y") + cst(big, 2));
  EXPECT_THROW(map_to_ring(var(big, "t"), small), std::exception);
}
