// Root-structure tests: torus, root decomposition, Borel subalgebras.

#include <set>

#include <gtest/gtest.h>

#include "liecr/builtins.hpp"
#include "liecr/roots.hpp"
#include "test_helpers.hpp"

namespace liecr {
namespace {

using test::cvec;

// Expected roots of sl(n) on the diagonal torus computed from matrices:
// alpha_jk(h) = h_jj - h_kk, with torus basis i(E_mm - E_{m+1,m+1}).
std::vector<Eigen::VectorXcd> matrix_roots(int n) {
  std::vector<Eigen::VectorXcd> out;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      Eigen::VectorXcd v(n - 1);
      for (int m = 0; m + 1 < n; ++m) {
        auto diag = [&](int p) -> Complex {
          if (p == m) return kI;
          if (p == m + 1) return -kI;
          return 0.0;
        };
        v(m) = diag(j) - diag(k);
      }
      out.push_back(v);
    }
  }
  return out;
}

TEST(StandardTorus, Dimensions) {
  EXPECT_EQ(standard_torus(share(su2())).real_dim(), 1);
  EXPECT_EQ(standard_torus(share(so3())).real_dim(), 1);
  for (int n = 2; n <= 4; ++n) {
    Subspace t = standard_torus(share(su(n)));
    EXPECT_EQ(t.real_dim(), n - 1);
    EXPECT_TRUE(bracket_span(t, t).is_zero());
  }
}

TEST(StandardTorus, UnsupportedWithoutHint) {
  auto alg = share(LieAlgebra::from_constants(Field::real, {"a", "b"}, {{0, 1, 1, 1.0}}));
  EXPECT_THROW(standard_torus(alg), UnsupportedError);
}

TEST(RootDecomposition, Sl2RootsAndSpaces) {
  AlgebraPtr g = share(complexify(su2()));
  auto data = root_decomposition(g, standard_torus(g));
  ASSERT_EQ(data.roots.size(), 2u);
  ASSERT_EQ(data.rank(), 1);
  // sorted: positive key first, alpha(e1) = -2i on e2 + i e3
  EXPECT_EQ(data.roots[0].values(0), Complex(0, -2));
  EXPECT_EQ(data.roots[1].values(0), Complex(0, 2));
  EXPECT_TRUE(data.root_spaces[0].equals(Subspace(g, {cvec({0, 1, kI})})));
  EXPECT_TRUE(data.root_spaces[1].equals(Subspace(g, {cvec({0, 1, -kI})})));
  EXPECT_LE(data.eigen_residual, 1e-9);
}

TEST(RootDecomposition, MatchesMatrixRoots) {
  for (int n = 3; n <= 4; ++n) {
    AlgebraPtr g = share(complexify(su(n)));
    auto data = root_decomposition(g, standard_torus(g));
    const auto expected = matrix_roots(n);
    ASSERT_EQ(data.roots.size(), expected.size()) << n;
    int total = data.rank();
    for (std::size_t i = 0; i < data.roots.size(); ++i) {
      EXPECT_EQ(data.root_spaces[i].dim(), 1);
      total += data.root_spaces[i].dim();
      int hits = 0;
      for (const auto& e : expected) hits += (data.roots[i].values - e).norm() < 1e-9;
      EXPECT_EQ(hits, 1);
    }
    EXPECT_EQ(total, g->dim());
    EXPECT_LE(data.eigen_residual, 1e-9);
  }
}

TEST(RootDecomposition, EigenResidualPerVector) {
  for (int n = 2; n <= 4; ++n) {
    AlgebraPtr g = share(complexify(su(n)));
    auto data = root_decomposition(g, standard_torus(g));
    for (std::size_t a = 0; a < data.roots.size(); ++a) {
      for (const auto& x : data.root_spaces[a].basis()) {
        for (int k = 0; k < data.rank(); ++k) {
          Element r = g->bracket(data.cartan_basis[k], x) - data.roots[a].values(k) * x;
          EXPECT_LE(r.norm(), 1e-9 * x.norm());
        }
      }
    }
  }
}

TEST(RootDecomposition, RootsComeInPairs) {
  AlgebraPtr g = share(complexify(su(4)));
  auto data = root_decomposition(g, standard_torus(g));
  for (const auto& r : data.roots) {
    EXPECT_GE(find_root(data, -r.values), 0);
    EXPECT_GT(r.values.cwiseAbs().maxCoeff(), 0.5);
  }
}

TEST(RootDecomposition, RejectsNonCartan) {
  AlgebraPtr g = share(complexify(su(3)));
  // a single diagonal element: its centralizer is the whole diagonal
  Subspace line(g, {Element::unit(8, 0)});
  EXPECT_THROW(root_decomposition(g, line), PreconditionError);
  Subspace nonabelian(g, {Element::unit(8, 0), Element::unit(8, 2)});
  EXPECT_THROW(root_decomposition(g, nonabelian), PreconditionError);
  EXPECT_THROW(root_decomposition(share(su2()), standard_torus(share(su2()))), ArgumentError);
}

TEST(Borel, Sl2Example) {
  auto data = cartan_borel(su2());
  AlgebraPtr g = data.algebra;
  EXPECT_TRUE(data.borel().equals(Subspace(g, {Element::unit(3, 0), cvec({0, 1, kI})})));
  EXPECT_TRUE(data.nilpotent().equals(Subspace(g, {cvec({0, 1, kI})})));
  EXPECT_EQ(data.borel().real_dim(), 4);
}

TEST(Borel, DimensionIdentity) {
  for (int n = 2; n <= 4; ++n) {
    auto data = cartan_borel(su(n));
    const int dim_k = n * n - 1;
    EXPECT_EQ(data.borel().real_dim(), dim_k + data.rank()) << n;
    EXPECT_TRUE(is_subalgebra(data.borel()).pass);
    EXPECT_TRUE(is_solvable(data.borel()));
    auto series = derived_series(data.borel());
    ASSERT_GE(series.size(), 2u);
    EXPECT_TRUE(series[1].equals(data.nilpotent()));
    EXPECT_TRUE(sum(data.cartan(), data.nilpotent()).equals(data.borel()));
    EXPECT_EQ(data.cartan().dim() + data.nilpotent().dim(), data.borel().dim());
  }
  auto sl3 = cartan_borel(su(3));
  EXPECT_EQ(sl3.borel().dim(), 5);
  EXPECT_EQ(sl3.nilpotent().dim(), 3);
}

TEST(Borel, TorusIsBorelMeetCompactForm) {
  for (int n = 2; n <= 4; ++n) {
    auto data = cartan_borel(su(n));
    Subspace t = intersect(data.borel(), compact_form(data.algebra));
    EXPECT_TRUE(t.equals(*data.torus_t)) << n;
  }
}

TEST(Borel, OppositeMeetsInCartan) {
  for (int n = 2; n <= 4; ++n) {
    AlgebraPtr g = share(complexify(su(n)));
    auto b1 = cartan_borel(g);
    auto b2 = cartan_borel(g, true);
    EXPECT_TRUE(intersect(b1.borel(), b2.borel()).equals(b1.cartan()));
  }
}

TEST(Borel, RejectsBadChoices) {
  AlgebraPtr g = share(complexify(su(3)));
  auto data = root_decomposition(g, standard_torus(g));
  auto pos = default_positive_system(data);
  ASSERT_EQ(pos.size(), 3u);
  // drop one: pair incomplete
  EXPECT_THROW(build_borel(data, std::vector<int>(pos.begin(), pos.end() - 1)), PreconditionError);
  // all roots: both members of a pair
  std::vector<int> all;
  for (std::size_t i = 0; i < data.roots.size(); ++i) all.push_back(static_cast<int>(i));
  EXPECT_THROW(build_borel(data, all), PreconditionError);
  // {a, b, -(a+b)} style: simple roots a1, a2 and the negative of their sum is not closed
  int a1 = -1, a2 = -1, s = -1;
  for (int i : pos)
    for (int j : pos)
      if (i < j) {
        int k = find_root(data, data.roots[i].values + data.roots[j].values);
        if (k >= 0) a1 = i, a2 = j, s = k;
      }
  ASSERT_GE(s, 0);
  const int neg_s = find_root(data, -data.roots[s].values);
  EXPECT_THROW(build_borel(data, std::vector<int>{a1, a2, neg_s}), PreconditionError);
  EXPECT_THROW(build_borel(data, std::vector<int>{99}), ArgumentError);
}

TEST(RootProperties, BracketTable) {
  for (int n = 2; n <= 4; ++n) {
    AlgebraPtr g = share(complexify(su(n)));
    auto data = root_decomposition(g, standard_torus(g));
    const int m = static_cast<int>(data.roots.size());
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        Subspace br = bracket_span(data.root_spaces[a], data.root_spaces[b]);
        const int s = find_root(data, data.roots[a].values + data.roots[b].values);
        if (s >= 0) {
          EXPECT_TRUE(data.root_spaces[s].contains(br));
          EXPECT_FALSE(br.is_zero());  // sl(n): [g_a, g_b] = g_{a+b}
        } else if ((data.roots[a].values + data.roots[b].values).norm() < 1e-9) {
          EXPECT_TRUE(data.cartan().contains(br));
          EXPECT_FALSE(br.is_zero());
        } else {
          EXPECT_TRUE(br.is_zero());
        }
      }
    }
  }
}

}  // namespace
}  // namespace liecr
