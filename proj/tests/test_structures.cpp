// Structure builder: invariant pairs, verifiers, extension test, products.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "liecr/structures.hpp"
#include "test_helpers.hpp"

namespace liecr {
namespace {

using C = std::complex<double>;
using test::cvec;
using test::random_complex;

MorphismSpec su4_spec() {
  Eigen::MatrixXcd m(3, 2);
  m << 0, 1, 0, C(0, 1), 1, 0;
  return MorphismSpec(3, 2, m);
}

MorphismSpec column(std::initializer_list<C> xs) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(xs.size()), 1);
  Eigen::Index i = 0;
  for (C x : xs) m(i++, 0) = x;
  return MorphismSpec(m);
}

struct Sl2 {
  CartanBorelData data = cartan_borel(su2());
  AlgebraPtr g = data.algebra;
  Element e1 = Element::unit(3, 0);
  Element up = cvec({0, 1, kI});
  Element down = cvec({0, 1, -kI});
  Subspace l_alpha(double a) const { return Subspace(g, {e1 + Complex(a) * up}); }
};

TEST(InvariantPair, Su2Example) {
  Sl2 s;
  auto pair = build_invariant_pair(column({1}), s.data);
  EXPECT_TRUE(pair.l.equals(Subspace(s.g, {s.up})));
  ASSERT_TRUE(pair.l_prime);
  EXPECT_TRUE(pair.l_prime->equals(s.data.borel()));
  ASSERT_TRUE(pair.xi);
  // -B(e1, e1) = 8, so xi = e1 / (2 sqrt 2)
  EXPECT_LE((pair.xi->coords() - (1.0 / std::sqrt(8.0)) * s.e1.coords()).norm(), 1e-15);
  EXPECT_TRUE(verify_cr(pair).pass);
  EXPECT_TRUE(verify_nacs(pair).pass);
  EXPECT_TRUE(verify_solvable(pair).pass);
  auto borel = verify_borel_decomposition(pair, s.data);
  EXPECT_TRUE(borel.pass) << borel.to_json().dump(2);
  EXPECT_EQ(borel.find("dim_l_cap_r")->data["dim"], 0);
  EXPECT_EQ(borel.find("dim_l_prime_cap_r")->data["dim"], 2);
}

TEST(InvariantPair, Su3Even) {
  auto data = cartan_borel(su(3));
  auto pair = build_invariant_pair(column({1, C(0, 1)}), data);
  EXPECT_EQ(pair.l.dim(), 4);
  EXPECT_FALSE(pair.l_prime);
  EXPECT_TRUE(verify_cr(pair).pass);
  EXPECT_TRUE(verify_solvable(pair).pass);
  auto borel = verify_borel_decomposition(pair, data);
  EXPECT_TRUE(borel.pass);
  EXPECT_EQ(borel.find("dim_l_cap_r")->data["dim"], 2);
}

TEST(InvariantPair, Su4Odd) {
  auto data = cartan_borel(su(4));
  auto pair = build_invariant_pair(su4_spec(), data);
  EXPECT_EQ(pair.l.dim(), 7);
  EXPECT_EQ(pair.l_prime->dim(), 8);
  EXPECT_TRUE(verify_nacs(pair).pass);
  EXPECT_TRUE(verify_solvable(pair).pass);
  EXPECT_TRUE(verify_borel_decomposition(pair, data).pass);
}

TEST(InvariantPair, RejectsFailingSpec) {
  auto data = cartan_borel(su(3));
  EXPECT_THROW(build_invariant_pair(column({1, 2}), data), PreconditionError);
  EXPECT_THROW(build_invariant_pair(column({1}), data), ArgumentError);
}

TEST(VerifyCr, Examples) {
  Sl2 s;
  for (double a : {1.0, -2.0, 0.5}) EXPECT_TRUE(verify_cr(s.l_alpha(a)).pass) << a;
  auto rep = verify_cr(Subspace(s.g, {s.e1}));
  EXPECT_FALSE(rep.pass);
  EXPECT_FALSE(rep.find("l_cap_k")->pass);
  EXPECT_TRUE(rep.find("conjugate_agreement")->pass);
}

TEST(VerifyNacs, ViolatedTransversality) {
  Sl2 s;
  StructurePair p{Subspace(s.g, {s.up}), Subspace(s.g, {s.up, s.down}), std::nullopt};
  auto rep = verify_nacs(p);
  EXPECT_FALSE(rep.pass);
  // <e2 + i e3, e2 - i e3> meets su(2) in <e2, e3>
  EXPECT_EQ(rep.find("l_prime_cap_k")->data["dim"], 2);
  EXPECT_THROW(verify_nacs(StructurePair{Subspace(s.g, {s.up}), std::nullopt, std::nullopt}), PreconditionError);
}

TEST(VerifySolvable, SemisimpleFails) {
  AlgebraPtr g = share(complexify(direct_sum(su2(), su2())));
  std::vector<Element> first;
  for (int i = 0; i < 3; ++i) first.push_back(Element::unit(6, i));
  auto rep = verify_solvable(StructurePair{Subspace(g, first), std::nullopt, std::nullopt});
  EXPECT_FALSE(rep.pass);
}

TEST(VerifyBorel, LAlphaMissesU) {
  Sl2 s;
  auto rep = verify_borel_decomposition(StructurePair{s.l_alpha(1.0), std::nullopt, std::nullopt}, s.data);
  EXPECT_FALSE(rep.pass);
  EXPECT_FALSE(rep.find("u_in_l")->pass);
}

TEST(NacsExtension, Sl2Candidates) {
  Sl2 s;
  auto cands = standard_borel_candidates(s.g);
  ASSERT_EQ(cands.size(), 2u);

  auto via_b = nacs_extension_test(s.data.nilpotent(), cands);
  EXPECT_TRUE(via_b.report.pass);
  EXPECT_EQ(via_b.candidate, 0);
  ASSERT_TRUE(via_b.pair);
  EXPECT_TRUE(verify_nacs(*via_b.pair).pass);
  EXPECT_TRUE(via_b.pair->l_prime->equals(s.data.borel()));

  for (double a : {1.0, -2.0, 0.5}) {
    auto none = nacs_extension_test(s.l_alpha(a), cands);
    EXPECT_FALSE(none.report.pass);
    EXPECT_EQ(none.report.message, "no extension among supplied Borels");
    EXPECT_FALSE(none.report.sub[0].pass);
    EXPECT_FALSE(none.report.sub[1].pass);
  }

  auto via_opp = nacs_extension_test(cands[1].nilpotent(), cands);
  EXPECT_TRUE(via_opp.report.pass);
  EXPECT_EQ(via_opp.candidate, 1);

  EXPECT_THROW(nacs_extension_test(Subspace(s.g, {s.e1}), cands), PreconditionError);
}

TEST(NacsExtension, Su4RoundTrip) {
  AlgebraPtr g = share(complexify(su(4)));
  auto cands = standard_borel_candidates(g);
  auto pair = build_invariant_pair(su4_spec(), cands[0]);
  auto ext = nacs_extension_test(pair.l, cands);
  ASSERT_TRUE(ext.report.pass);
  EXPECT_TRUE(verify_nacs(*ext.pair).pass);
}

TEST(Products, Modes) {
  Sl2 s;
  auto nacs = build_invariant_pair(column({1}), s.data);

  auto hopf = product_structure(nacs, std::nullopt, ProductMode::nacs_times_circle);
  EXPECT_EQ(hopf.algebra()->dim(), 4);
  EXPECT_EQ(hopf.l.dim(), 2);
  EXPECT_TRUE(verify_cr(hopf).pass);

  auto twice = product_structure(nacs, nacs, ProductMode::nacs_times_nacs);
  EXPECT_EQ(twice.algebra()->dim(), 6);
  EXPECT_EQ(twice.l.dim(), 3);
  EXPECT_TRUE(verify_cr(twice).pass);

  auto su3 = cartan_borel(su(3));
  auto cplx = build_invariant_pair(column({1, C(0, 1)}), su3);
  auto ext = product_structure(cplx, std::nullopt, ProductMode::complex_times_circle);
  EXPECT_EQ(ext.algebra()->dim(), 9);
  EXPECT_TRUE(verify_nacs(ext).pass);

  EXPECT_THROW(product_structure(cplx, std::nullopt, ProductMode::nacs_times_circle), PreconditionError);
  EXPECT_THROW(product_structure(nacs, std::nullopt, ProductMode::complex_times_circle), PreconditionError);
  EXPECT_THROW(product_structure(nacs, std::nullopt, ProductMode::nacs_times_nacs), PreconditionError);
  EXPECT_THROW(product_structure(nacs, nacs, ProductMode::nacs_times_circle), PreconditionError);
}

// Properties over random passing morphisms.

MorphismSpec random_spec(std::mt19937_64& rng, int q, int l) {
  Eigen::MatrixXcd m(q, l);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < l; ++j) m(i, j) = random_complex(rng);
  return MorphismSpec(q, l, m);
}

TEST(StructureProperties, RandomPassingSpecsVerify) {
  std::mt19937_64 rng(2024);
  for (int n : {2, 3, 4, 5}) {
    auto data = cartan_borel(su(n));
    const int q = n - 1;
    const int l = (q + 1) / 2;
    int built = 0;
    for (int t = 0; t < 50; ++t) {
      auto spec = random_spec(rng, q, l);
      if (!check_condition(spec).pass) continue;
      auto pair = build_invariant_pair(spec, data);
      ++built;
      EXPECT_TRUE(verify_cr(pair).pass) << n;
      EXPECT_TRUE(verify_solvable(pair).pass) << n;
      EXPECT_TRUE(verify_borel_decomposition(pair, data).pass) << n;
      if (spec.parity() == Parity::odd) {
        auto rep = verify_nacs(pair);
        EXPECT_TRUE(rep.pass) << n;
        EXPECT_EQ(2 * pair.l.dim() + 1, data.algebra->dim());
      }
    }
    EXPECT_GT(built, 40);
  }
}

TEST(StructureProperties, ProductsOfRandomStructures) {
  std::mt19937_64 rng(77);
  auto su2data = cartan_borel(su2());
  auto su3data = cartan_borel(su(3));
  for (int t = 0; t < 10; ++t) {
    auto a = build_invariant_pair(random_spec(rng, 1, 1), su2data);
    auto b = build_invariant_pair(random_spec(rng, 1, 1), su2data);
    EXPECT_TRUE(verify_cr(product_structure(a, std::nullopt, ProductMode::nacs_times_circle)).pass);
    EXPECT_TRUE(verify_cr(product_structure(a, b, ProductMode::nacs_times_nacs)).pass);
    auto spec = random_spec(rng, 2, 1);
    if (!check_condition(spec).pass) continue;
    auto c = build_invariant_pair(spec, su3data);
    EXPECT_TRUE(verify_nacs(product_structure(c, std::nullopt, ProductMode::complex_times_circle)).pass);
  }
}

}  // namespace
}  // namespace liecr
