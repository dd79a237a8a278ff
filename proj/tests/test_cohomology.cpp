#include <gtest/gtest.h>

#include "nilflex/catalog.hpp"
#include "nilflex/cohomology.hpp"
#include "nilflex/sampler.hpp"

using namespace nilflex;

namespace {

std::size_t binomial(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

bool all_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

std::vector<QForm> forms(std::initializer_list<const char*> texts, int n) {
  std::vector<QForm> out;
  for (const char* t : texts) out.push_back(parse_form(t, n));
  return out;
}

const char* const kCase1 = "(0,0,12,13,23,14-25)";
const char* const kTorus6 = "(0,0,0,0,0,0)";
const char* const kKT = "(0,0,12,0)";

}  // namespace

TEST(Betti, AbelianIsBinomial) {
  for (int n = 1; n <= 8; ++n) {
    AlgebraSpec spec;
    spec.entries.assign(static_cast<std::size_t>(n), QForm(2));
    const CohomologyRing ring(NilpotentLieAlgebra::build(spec));
    for (int k = 0; k <= n; ++k) EXPECT_EQ(ring.betti(k), binomial(n, k)) << n << " " << k;
  }
}

TEST(Betti, TableColumnsForEveryRow) {
  for (const auto& e : six_dim_catalog()) {
    const CohomologyRing ring(NilpotentLieAlgebra::parse(e.structure));
    EXPECT_EQ(ring.betti(1), static_cast<std::size_t>(e.b1)) << e.structure;
    EXPECT_EQ(ring.betti(2), static_cast<std::size_t>(e.b2)) << e.structure;
  }
}

TEST(Betti, RankNullityOracle) {
  for (const auto& e : six_dim_catalog()) {
    const auto g = NilpotentLieAlgebra::parse(e.structure);
    const CohomologyRing ring(g);
    for (int k = 0; k <= 6; ++k) {
      const std::size_t rk_out = rank(g.differential_matrix(k));
      const std::size_t rk_in = k > 0 ? rank(g.differential_matrix(k - 1)) : 0;
      EXPECT_EQ(ring.betti(k), g.basis().size(k) - rk_out - rk_in) << e.structure << " k=" << k;
      EXPECT_EQ(ring.cocycle_dim(k), g.basis().size(k) - rk_out);
      EXPECT_EQ(ring.coboundary_dim(k), rk_in);
    }
  }
}

TEST(Betti, ThirdBettiRelationAndPoincareDuality) {
  for (const auto& e : six_dim_catalog()) {
    const auto b = CohomologyRing(NilpotentLieAlgebra::parse(e.structure)).betti_numbers();
    EXPECT_EQ(b[3], 2 * (b[2] - b[1] + 1)) << e.structure;
    for (int k = 0; k <= 6; ++k) EXPECT_EQ(b[k], b[6 - k]) << e.structure;
  }
}

TEST(Basis, CatalogBasisSpansSecondCohomology) {
  const CohomologyRing ring(NilpotentLieAlgebra::parse(kCase1));
  const auto basis = forms({"14", "15+24", "26-34", "16-35"}, 6);
  ASSERT_EQ(ring.betti(2), basis.size());
  const CohomologyRing rebased = ring.rebased(2, basis);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Vector c = rebased.class_of(basis[i]).coords;
    for (std::size_t j = 0; j < c.size(); ++j) EXPECT_EQ(c[j], Rational(i == j ? 1 : 0));
  }
  // A dependent list is not a basis.
  EXPECT_THROW(ring.rebased(2, forms({"14", "14", "26-34", "16-35"}, 6)), Error);
}

TEST(Basis, RepresentativesAreClosedAndIndependent) {
  for (const auto& e : six_dim_catalog()) {
    const auto g = NilpotentLieAlgebra::parse(e.structure);
    const CohomologyRing ring(g);
    for (int k = 0; k <= 6; ++k) {
      for (const auto& r : ring.basis(k)) EXPECT_TRUE(g.d(r).is_zero());
      for (std::size_t i = 0; i < ring.betti(k); ++i) {
        const Vector c = ring.class_of(ring.basis(k)[i]).coords;
        EXPECT_EQ(c, ring.basis_class(k, i).coords);
      }
    }
  }
}

TEST(ClassOf, BoundariesVanishAndNonClosedThrows) {
  const auto g = NilpotentLieAlgebra::parse(kCase1);
  const CohomologyRing ring(g);
  EXPECT_TRUE(all_zero(ring.class_of(basis_form(MultiIndex::of({1, 2}))).coords));
  try {
    ring.class_of(basis_form(MultiIndex::of({3})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCocycle);
  }
}

TEST(Cup, KodairaThurston) {
  const auto g = NilpotentLieAlgebra::parse(kKT);
  const CohomologyRing ring(g);
  const auto x1 = ring.class_of(parse_form("1", 4)), x2 = ring.class_of(parse_form("2", 4));
  EXPECT_TRUE(all_zero(cup(ring, x1, x2).coords));
  EXPECT_EQ(cup_image_dim(ring, 1, 2), 3u);
  std::vector<Vector> img;
  for (const char* t : {"123", "134", "234"}) {
    QForm f(3);
    std::vector<int> idx;
    for (const char* c = t; *c; ++c) idx.push_back(*c - '0');
    f.add(MultiIndex::of(idx), 1);
    img.push_back(ring.class_of(f).coords);
  }
  EXPECT_EQ(rank(QMatrix::from_columns(ring.betti(3), img)), 3u);

  // L = [α14 + α23] ∧ : H¹ -> H³.
  const QForm omega = parse_form("14+23", 4);
  std::vector<Vector> image;
  for (const auto& b : ring.basis(1)) image.push_back(ring.class_of(wedge(omega, b)).coords);
  EXPECT_EQ(rank(QMatrix::from_columns(ring.betti(3), image)), 2u);
}

TEST(Cup, TorusIsExteriorAlgebra) {
  const CohomologyRing ring(NilpotentLieAlgebra::parse(kTorus6));
  for (int p = 0; p <= 6; ++p)
    for (int q = 0; p + q <= 6; ++q) EXPECT_EQ(cup_image_dim(ring, p, q), binomial(6, p + q)) << p << q;
}

TEST(Cup, GradedCommutativeAndAssociative) {
  for (const char* s : {kCase1, "(0,0,0,12,13,23)", "(0,0,12,13,14,15)", kKT}) {
    const CohomologyRing ring(NilpotentLieAlgebra::parse(s));
    const int n = ring.dim();
    for (int p = 1; p <= 2; ++p)
      for (int q = 1; p + q <= n; ++q)
        for (std::size_t i = 0; i < ring.betti(p); ++i)
          for (std::size_t j = 0; j < ring.betti(q); ++j) {
            const auto a = ring.basis_class(p, i), b = ring.basis_class(q, j);
            Vector ab = cup(ring, a, b).coords, ba = cup(ring, b, a).coords;
            if ((p * q) % 2)
              for (auto& x : ba) x = -x;
            EXPECT_EQ(ab, ba) << s;
            if (p + q + 1 <= n && ring.betti(1) > 0) {
              const auto c = ring.basis_class(1, 0);
              EXPECT_EQ(cup(ring, cup(ring, a, b), c).coords, cup(ring, a, cup(ring, b, c)).coords);
            }
          }
  }
}

TEST(Cup, WellDefinedOnClasses) {
  const auto g = NilpotentLieAlgebra::parse(kCase1);
  const CohomologyRing ring(g);
  // Adding a boundary to a representative does not change the product.
  const auto a = ring.basis_class(2, 0), b = ring.basis_class(2, 1);
  CohomClass shifted = a;
  shifted.representative += g.d(basis_form(MultiIndex::of({5})));
  EXPECT_EQ(cup(ring, a, b).coords, cup(ring, shifted, b).coords);
}

TEST(Pairing, NonsingularEverywhere) {
  for (const auto& e : six_dim_catalog()) {
    const CohomologyRing ring(NilpotentLieAlgebra::parse(e.structure));
    for (int k = 0; k <= 6; ++k) {
      const QMatrix p = pairing_matrix(ring, k);
      EXPECT_EQ(rank(p), ring.betti(k)) << e.structure << " k=" << k;
    }
  }
}

TEST(Pairing, GradedSymmetry) {
  const CohomologyRing ring(NilpotentLieAlgebra::parse(kCase1));
  for (int k = 0; k <= 6; ++k) {
    const QMatrix a = pairing_matrix(ring, k), b = pairing_matrix(ring, 6 - k);
    const Rational sign = (k * (6 - k)) % 2 ? -1 : 1;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) EXPECT_EQ(a(i, j), sign * b(j, i));
  }
  EXPECT_THROW(poincare_pairing(ring, ring.basis_class(1, 0), ring.basis_class(2, 0)), Error);
}

TEST(Rho, Examples) {
  const CohomologyRing c1(NilpotentLieAlgebra::parse(kCase1));
  const auto w1 = c1.class_of(parse_form("14+26-34", 6));
  EXPECT_EQ(rho_form(c1, w1, 0).rank, 0u);

  const CohomologyRing torus(NilpotentLieAlgebra::parse(kTorus6));
  const auto wt = torus.class_of(parse_form("12+34+56", 6));
  EXPECT_EQ(rho_form(torus, wt, 0).rank, 6u);
  EXPECT_THROW(rho_form(torus, wt, 2), Error);
}

TEST(Rho, SkewWithEvenRank) {
  Sampler s(31);
  for (const auto& e : six_dim_catalog()) {
    const CohomologyRing ring(NilpotentLieAlgebra::parse(e.structure));
    Vector coords(ring.betti(2));
    for (auto& x : coords) x = s.uniform(-5, 5);
    const auto w = ring.make_class(2, coords);
    const RhoForm r = rho_form(ring, w, 0);
    EXPECT_EQ(r.matrix.transpose(), -r.matrix) << e.structure;
    EXPECT_EQ(r.rank % 2, 0u) << e.structure;
  }
}
