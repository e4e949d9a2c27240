// Unit and property tests for the algebra-core module.

#include <random>

#include <gtest/gtest.h>

#include "liecr/builtins.hpp"
#include "liecr/subspace.hpp"
#include "test_helpers.hpp"

namespace liecr {
namespace {

using test::cvec;
using test::random_element;

class Sl2Fixture : public ::testing::Test {
 protected:
  AlgebraPtr k = share(su2());
  AlgebraPtr g = share(complexify(su2()));
  Element e1 = Element::unit(3, 0);
  Element e2 = Element::unit(3, 1);
  Element e3 = Element::unit(3, 2);
  Element u_plus = cvec({0, 1, kI});      // e2 + i e3
  Element u_minus = cvec({0, 1, -kI});    // e2 - i e3
  Subspace u = Subspace(g, {u_plus});
  Subspace b = Subspace(g, {e1, u_plus});
};

// Bracket of two elements expanded by hand from the three su(2) relations,
// independent of the structure-constant table.
Eigen::VectorXcd su2_bracket_by_relations(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  // [e1,e2] = 2e3, [e2,e3] = 2e1, [e3,e1] = 2e2: a cross product scaled by 2.
  Eigen::VectorXcd out(3);
  out(0) = 2.0 * (x(1) * y(2) - x(2) * y(1));
  out(1) = 2.0 * (x(2) * y(0) - x(0) * y(2));
  out(2) = 2.0 * (x(0) * y(1) - x(1) * y(0));
  return out;
}

TEST_F(Sl2Fixture, BracketMatchesStandardRelations) {
  EXPECT_EQ(k->bracket(e1, e2).coords(), (2.0 * e3).coords());
  EXPECT_EQ(k->bracket(e2, e3).coords(), (2.0 * e1).coords());
  EXPECT_EQ(k->bracket(e3, e1).coords(), (2.0 * e2).coords());
}

TEST_F(Sl2Fixture, BracketOfElementWithItselfVanishes) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    Element x = random_element(rng, 3);
    EXPECT_LE(g->bracket(x, x).norm(), 1e-14);
  }
}

TEST_F(Sl2Fixture, RaisingLoweringBracket) {
  // [e2 + i e3, e2 - i e3] = -4i e1
  Eigen::VectorXcd expected = su2_bracket_by_relations(u_plus.coords(), u_minus.coords());
  EXPECT_LE((expected - cvec({-4.0 * kI, 0, 0}).coords()).norm(), 1e-15);
  EXPECT_LE((g->bracket(u_plus, u_minus).coords() - expected).norm(), 1e-15);
}

TEST_F(Sl2Fixture, BracketDimensionMismatchThrows) {
  EXPECT_THROW(g->bracket(e1, Element::unit(4, 0)), ArgumentError);
}

TEST(Jacobi, ExactBuiltinsHaveZeroResidual) {
  for (const auto& alg : {su2(), su(3), su(4), so3(), u1()}) {
    auto rep = check_jacobi(alg);
    EXPECT_TRUE(rep.pass) << alg.name();
    EXPECT_EQ(rep.data["residual"].get<double>(), 0.0) << alg.name();
    EXPECT_EQ(rep.data["arithmetic"], "exact");
  }
}

TEST(Jacobi, RescalingOneConstantKeepsJacobiInDimensionThree) {
  // In dimension 3 every triple (i, j, k) with distinct indices sums
  // c * [e_k, e_k] terms, so changing c(1,2,3) to 2.1 alone stays a Lie algebra.
  std::vector<StructureConstant<Complex>> cs = {{0, 1, 2, 2.1}, {1, 2, 0, 2.0}, {2, 0, 1, 2.0}};
  auto alg = LieAlgebra::from_constants(Field::real, {"e1", "e2", "e3"}, cs);
  EXPECT_TRUE(check_jacobi(alg).pass);
}

TEST(Jacobi, BrokenConstantsGiveWitnessTriple) {
  // [e1, e2] = 2e3 + 0.1 e1 breaks Jacobi on (e1, e2, e3).
  std::vector<StructureConstant<Complex>> cs = {
      {0, 1, 2, 2.0}, {0, 1, 0, 0.1}, {1, 2, 0, 2.0}, {2, 0, 1, 2.0}};
  auto alg = LieAlgebra::from_constants(Field::real, {"e1", "e2", "e3"}, cs);
  auto rep = check_jacobi(alg);
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.data["witness"], Json::array({0, 1, 2}));
  // raw residual 0.2, normalised by max(1, max|c|^2) = 4
  EXPECT_NEAR(rep.data["residual"].get<double>(), 0.05, 1e-12);
}

TEST(Jacobi, Su3ExhaustiveTriples) {
  // Independent float check over all ordered triples.
  auto alg = su(3);
  const int n = alg.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        Element x = Element::unit(n, i), y = Element::unit(n, j), z = Element::unit(n, l);
        Element s = alg.bracket(alg.bracket(x, y), z) + alg.bracket(alg.bracket(y, z), x) +
                    alg.bracket(alg.bracket(z, x), y);
        worst = std::max(worst, s.norm());
      }
  EXPECT_EQ(worst, 0.0);
  EXPECT_TRUE(check_jacobi(alg).pass);
}

TEST(Algebra, AntisymmetricCompletionAndConflicts) {
  auto alg = LieAlgebra::from_constants(Field::real, {"a", "b"}, {{0, 1, 1, 1.0}});
  EXPECT_EQ(alg.constant(1, 0, 1), Complex(-1.0));
  EXPECT_THROW(LieAlgebra::from_constants(Field::real, {"a", "b"}, {{0, 1, 1, 1.0}, {1, 0, 1, 1.0}}),
               ArgumentError);
  EXPECT_THROW(LieAlgebra::from_constants(Field::real, {"a"}, {{0, 0, 0, 1.0}}), ArgumentError);
  EXPECT_THROW(LieAlgebra::from_constants(Field::real, {"a", "b"}, {{0, 1, 1, Complex(0, 1)}}),
               ArgumentError);
}

TEST(Complexify, Su2GivesSl2) {
  auto g = complexify(su2());
  EXPECT_EQ(g.field(), Field::complex);
  EXPECT_EQ(g.dim(), 3);
  ASSERT_TRUE(g.conjugation().has_value());
  EXPECT_TRUE(g.conjugation()->isIdentity());
  EXPECT_EQ(g.constant(0, 1, 2), Complex(2.0));
}

TEST(Complexify, U1IsAbelianLine) {
  auto g = complexify(u1());
  EXPECT_EQ(g.dim(), 1);
  EXPECT_EQ(g.constant(0, 0, 0), Complex(0.0));
  EXPECT_EQ(g.max_constant(), 0.0);
}

TEST(Complexify, PreservesJacobiAndRejectsComplexInput) {
  for (const auto& alg : {su2(), su(3), so3()}) {
    EXPECT_EQ(check_jacobi(alg).pass, check_jacobi(complexify(alg)).pass);
  }
  EXPECT_EQ(complexify(su(3)).dim(), 8);
  EXPECT_THROW(complexify(complexify(su2())), ArgumentError);
}

TEST(Complexify, FixedSetOfConjugationIsOriginalRealAlgebra) {
  for (int n = 2; n <= 4; ++n) {
    AlgebraPtr g = share(complexify(su(n)));
    Subspace kform = compact_form(g);
    EXPECT_EQ(kform.real_dim(), g->dim());
    std::vector<Element> units;
    for (int i = 0; i < g->dim(); ++i) units.push_back(Element::unit(g->dim(), i));
    EXPECT_TRUE(kform.equals(Subspace(g, units, Field::real)));
  }
}

TEST_F(Sl2Fixture, SubalgebraChecks) {
  EXPECT_TRUE(is_subalgebra(u).pass);
  EXPECT_TRUE(is_subalgebra(Subspace::whole(g)).pass);
  auto rep = is_subalgebra(Subspace(k, {e2, e3}, Field::real));
  EXPECT_FALSE(rep.pass);
  ASSERT_TRUE(rep.data.contains("witness_bracket"));
  // the witness bracket is a multiple of e1
  auto w = rep.data["witness_bracket"];
  EXPECT_EQ(w[1], Json::array({0.0, 0.0}));
  EXPECT_EQ(w[2], Json::array({0.0, 0.0}));
}

TEST_F(Sl2Fixture, IdealChecks) {
  EXPECT_TRUE(is_ideal_in(u, b).pass);
  Subspace line(g, {e1});
  auto rep = is_ideal_in(line, b);
  EXPECT_FALSE(rep.pass);
  // [e1, e2 + i e3] = -2i (e2 + i e3)
  EXPECT_LE((g->bracket(e1, u_plus) - Complex(0, -2) * u_plus).norm(), 1e-15);
  EXPECT_TRUE(is_ideal_in(b, b).pass);
  EXPECT_THROW(is_ideal_in(b, u), PreconditionError);
}

TEST_F(Sl2Fixture, DerivedSeries) {
  auto series = derived_series(b);
  ASSERT_EQ(series.size(), 3u);
  EXPECT_EQ(series[0].dim(), 2);
  EXPECT_TRUE(series[1].equals(u));
  EXPECT_EQ(series[2].dim(), 0);
  EXPECT_TRUE(is_solvable(b));

  auto full = derived_series(Subspace::whole(g));
  ASSERT_EQ(full.size(), 1u);
  EXPECT_FALSE(is_solvable(Subspace::whole(g)));

  auto zero = derived_series(Subspace::zero(g));
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_TRUE(is_solvable(Subspace::zero(g)));

  EXPECT_THROW(derived_series(Subspace(g, {e2, e3})), PreconditionError);
}

TEST_F(Sl2Fixture, IntersectionsWithCompactForm) {
  Subspace kform = compact_form(g);
  EXPECT_EQ(intersect(u, kform).real_dim(), 0);
  Subspace t = intersect(b, kform);
  EXPECT_EQ(t.field(), Field::real);
  EXPECT_EQ(t.real_dim(), 1);
  EXPECT_TRUE(t.equals(Subspace(g, {e1}, Field::real)));
  EXPECT_TRUE(intersect(b, b).equals(b));
}

// Properties

TEST(AlgebraProperties, BracketBilinearAntisymmetric) {
  AlgebraPtr g = share(complexify(su(3)));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int t = 0; t < 1000; ++t) {
    Element x = random_element(rng, 8), y = random_element(rng, 8), z = random_element(rng, 8);
    Complex a(coef(rng), coef(rng));
    EXPECT_LE((g->bracket(x, y) + g->bracket(y, x)).norm(), 1e-12);
    Element lhs = g->bracket(a * x + z, y);
    Element rhs = a * g->bracket(x, y) + g->bracket(z, y);
    EXPECT_LE((lhs - rhs).norm(), 1e-12 * std::max(1.0, lhs.norm()));
  }
}

TEST(AlgebraProperties, DerivedSeriesDecreasesAndStabilizes) {
  AlgebraPtr g = share(complexify(su(3)));
  std::mt19937_64 rng(3);
  // Random subalgebras: spans generated by closing random sets under brackets.
  for (int t = 0; t < 20; ++t) {
    Subspace v(g, {random_element(rng, 8)});
    for (int step = 0; step < 8 && !is_subalgebra(v).pass; ++step) v = sum(v, bracket_span(v, v));
    auto series = derived_series(v);
    EXPECT_LE(series.size(), static_cast<std::size_t>(v.dim() + 1));
    for (std::size_t i = 1; i < series.size(); ++i) EXPECT_LT(series[i].dim(), series[i - 1].dim());
  }
}

TEST(AlgebraProperties, IntersectionGrassmann) {
  AlgebraPtr g = share(complexify(su(3)));
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> count(0, 4);
  for (int t = 0; t < 500; ++t) {
    std::vector<Element> shared, va, wb;
    for (int i = count(rng); i > 0; --i) shared.push_back(random_element(rng, 8));
    va = shared;
    wb = shared;
    for (int i = count(rng); i > 0; --i) va.push_back(random_element(rng, 8));
    for (int i = count(rng); i > 0; --i) wb.push_back(random_element(rng, 8));
    const bool real = (t % 3 == 0);
    Subspace v(g, va, real ? Field::real : Field::complex);
    Subspace w(g, wb);
    Subspace cap = intersect(v, w);
    Subspace cup = sum(v, w);
    EXPECT_EQ(cap.real_dim() + cup.real_dim(), v.real_dim() + w.real_dim());
    EXPECT_TRUE(cap.equals(intersect(w, v)));
    EXPECT_TRUE(intersect(v, v).equals(v));
  }
}

}  // namespace
}  // namespace liecr
