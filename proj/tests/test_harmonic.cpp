#include <gtest/gtest.h>

#include <functional>

#include "nilflex/catalog.hpp"
#include "nilflex/harmonic.hpp"
#include "nilflex/sampler.hpp"

using namespace nilflex;

namespace {

const char* const kCase1 = "(0,0,12,13,23,14-25)";
const char* const kCase2 = "(0,0,0,12,14,15+23+24)";
const char* const kTorus6 = "(0,0,0,0,0,0)";
const char* const kKT = "(0,0,12,0)";

Vector ints(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

FixedSymplecticForm fixed(const char* spec, const char* omega) {
  const auto g = NilpotentLieAlgebra::parse(spec);
  return invert_omega(g, parse_form(omega, g.dim()));
}

FixedSymplecticForm fixed_at(const char* spec, const Vector& p) {
  const auto g = NilpotentLieAlgebra::parse(spec);
  return invert_omega(g, catalog_family(g).omega_at(p));
}

std::size_t binomial(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Mismatch;
}

// A few symplectic points on the catalog rows where ranks vary.
std::vector<FixedSymplecticForm> flexible_points() {
  std::vector<FixedSymplecticForm> out;
  out.push_back(fixed_at(kCase1, ints({1, 0, 1, 2})));
  out.push_back(fixed_at(kCase1, ints({2, -1, 1, 1})));
  out.push_back(fixed_at(kCase2, ints({1, 0, 0, 0, 1})));
  out.push_back(fixed_at(kCase2, ints({1, 1, 0, 1, 0})));
  out.push_back(fixed_at("(0,0,0,12,13,23)", ints({1, 0, 1, 0, 0, 0, 0, 1})));
  out.push_back(fixed("(0,0,0,0,12,13)", "16+25+34"));
  out.push_back(fixed("(0,0,0,12,13+14,24)", "16+25+34"));
  return out;
}

}  // namespace

TEST(InvertOmega, StandardFormAndScaling) {
  const auto f = fixed(kTorus6, "12+34+56");
  EXPECT_EQ(f.m, 3);
  EXPECT_EQ(f.w * f.pi, QMatrix::identity(6));
  EXPECT_EQ(f.volume, basis_form(MultiIndex::top(6)));
  const auto g = fixed(kTorus6, "2*12+2*34+2*56");
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(g.pi(i, j) * 2, f.pi(i, j));
}

TEST(InvertOmega, InverseOracleOnCatalogPoints) {
  for (const auto& f : flexible_points()) {
    const std::size_t n = static_cast<std::size_t>(f.g.dim());
    EXPECT_EQ(f.w * f.pi, QMatrix::identity(n));
    EXPECT_EQ(f.pi.transpose(), -f.pi);
  }
}

TEST(InvertOmega, Errors) {
  const auto c1 = NilpotentLieAlgebra::parse(kCase1);
  EXPECT_EQ(kind_of([&] { invert_omega(c1, parse_form("16", 6)); }), ErrorKind::NotCocycle);
  EXPECT_EQ(kind_of([&] { invert_omega(c1, parse_form("14", 6)); }), ErrorKind::Degenerate);
  EXPECT_EQ(kind_of([] { invert_omega(NilpotentLieAlgebra::parse("(0,0,12)"), parse_form("12", 3)); }),
            ErrorKind::Dimension);
}

TEST(Star, SquaresToIdentity) {
  for (const auto& f : flexible_points()) {
    const auto ops = build_operators(f);
    for (int k = 0; k <= ops.n; ++k) {
      const auto& basis = f.g.basis();
      EXPECT_EQ(ops.star[ops.n - k] * ops.star[k], QMatrix::identity(basis.size(k))) << k;
    }
  }
}

TEST(Star, DefiningIdentity) {
  for (const auto& f : flexible_points()) {
    const auto& basis = f.g.basis();
    const MultiIndex top = MultiIndex::top(f.g.dim());
    for (int k : {1, 2, 3}) {
      for (MultiIndex a : basis.degree(k)) {
        const QForm sa = star(f, basis_form(a));
        for (MultiIndex b : basis.degree(k)) {
          const Rational lhs = wedge(basis_form(b), sa).coefficient(top);
          EXPECT_EQ(lhs, poisson_pairing(f, b, a) * f.volume.coefficient(top));
        }
      }
    }
  }
}

TEST(Delta, Examples) {
  const auto t = fixed(kTorus6, "12+34+56");
  const auto& basis = t.g.basis();
  for (int k = 1; k <= 6; ++k)
    for (MultiIndex m : basis.degree(k)) EXPECT_TRUE(koszul_delta(t, basis_form(m)).is_zero());

  const QForm unit = QForm::unit();
  EXPECT_EQ(koszul_delta(t, unit).degree(), -1);
  EXPECT_TRUE(koszul_delta(t, unit).is_zero());

  for (const auto& f : flexible_points()) {
    // i(Π) kills 1-forms, so δα = i(Π)dα.
    const QForm a6 = basis_form(MultiIndex::of({6}));
    EXPECT_EQ(koszul_delta(f, a6), poisson_contraction(f, f.g.d(a6)));
  }
}

TEST(Delta, KernelEqualsKernelOfDStar) {
  for (const auto& f : flexible_points()) {
    const auto ops = build_operators(f);
    for (int k = 1; k <= ops.n; ++k) {
      const QMatrix dstar = ops.d[ops.n - k] * ops.star[k];
      const auto kd = nullspace_basis(ops.delta[k]);
      const auto ks = nullspace_basis(dstar);
      ASSERT_EQ(kd.size(), ks.size()) << k;
      for (const auto& v : ks) {
        const Vector img = ops.delta[k] * std::span<const Rational>(v);
        EXPECT_TRUE(std::all_of(img.begin(), img.end(), [](const Rational& x) { return sgn(x) == 0; }));
      }
    }
  }
}

TEST(Profile, AbelianIsBinomial) {
  for (const char* spec : {"(0,0)", "(0,0,0,0)", kTorus6}) {
    const auto g = NilpotentLieAlgebra::parse(spec);
    const int n = g.dim();
    std::string omega;
    for (int i = 1; i < n; i += 2) omega += (omega.empty() ? "" : "+") + std::to_string(i) + std::to_string(i + 1);
    const auto hp = harmonic_profile(invert_omega(g, parse_form(omega, n)));
    for (int k = 0; k <= n; ++k) EXPECT_EQ(hp.h[k], binomial(n, k)) << spec << " k=" << k;
  }
}

TEST(Profile, FlexibleExamples) {
  const auto a = harmonic_profile(fixed_at(kCase1, ints({1, 0, 1, 2})));
  EXPECT_EQ(a.h[4], 4u);
  EXPECT_EQ(a.h[5], 0u);
  const auto b = harmonic_profile(fixed_at(kCase1, ints({2, -1, 1, 1})));
  EXPECT_EQ(b.h[4], 2u);
  const auto c = harmonic_profile(fixed_at(kCase2, ints({1, 1, 0, 1, 0})));
  EXPECT_EQ(c.h[4], 3u);
  const auto kt = harmonic_profile(fixed(kKT, "14+23"));
  EXPECT_EQ(kt.h[3], 2u);
}

TEST(Profile, AgreesWithRankFormula) {
  Sampler s(51);
  for (const char* spec : {kCase1, kCase2, "(0,0,0,12,13+14,24)", "(0,0,0,12,13,23)", "(0,0,0,0,12,13)"}) {
    const auto g = NilpotentLieAlgebra::parse(spec);
    const auto fam = catalog_family(g);
    for (int t = 0; t < 2; ++t) {
      Vector p(fam.nparams());
      do {
        for (auto& x : p) x = s.uniform(-3, 3);
      } while (!fam.is_symplectic_at(p));
      const auto hp = harmonic_profile(invert_omega(g, fam.omega_at(p)));
      const RankBetti rb = harmonic_betti_via_rank(fam, p);
      EXPECT_EQ(hp.h[5], rb.h_top1) << spec;
      EXPECT_EQ(hp.h[4], rb.h_top2) << spec;
    }
  }
}

TEST(Profile, StructuralProperties) {
  for (const auto& f : flexible_points()) {
    const CohomologyRing ring(f.g);
    const auto ops = build_operators(f);
    const auto hp = harmonic_profile(f, ops, ring);
    const int m = f.m;
    for (int k = 0; k <= 2; ++k) EXPECT_EQ(hp.h[k], ring.betti(k));
    for (int k = 0; k <= m; ++k) {
      EXPECT_EQ(hp.h_star[m - k], hp.h[m + k]);
      EXPECT_GE(hp.h[m - k], hp.h[m + k]);
    }
    EXPECT_EQ(hp.h[2 * m - 1] % 2, 0u);
  }
}

TEST(Profile, ScaleInvariant) {
  const auto g = NilpotentLieAlgebra::parse(kCase1);
  const auto fam = catalog_family(g);
  const QForm omega = fam.omega_at(ints({2, -1, 1, 1}));
  const auto base = harmonic_profile(invert_omega(g, omega));
  for (long c : {-1L, 3L}) EXPECT_EQ(harmonic_profile(invert_omega(g, Rational(c) * omega)).h, base.h);
}

TEST(IdentitySuite, HoldsEverywhereTested) {
  std::vector<FixedSymplecticForm> pts = flexible_points();
  pts.push_back(fixed(kTorus6, "12+34+56"));
  pts.push_back(fixed(kKT, "14+23"));
  pts.push_back(fixed("(0,0,12,13)", "14+23"));
  for (const auto& f : pts) {
    const IdentityReport r = identity_suite(f);
    EXPECT_TRUE(r.ok()) << to_string(f.omega) << ": " << r.first_failure();
    EXPECT_GE(r.checks.size(), 6u);
  }
}

TEST(ProductStar, TorusAndKodairaThurston) {
  const auto t2 = fixed("(0,0)", "12");
  const auto t4 = fixed("(0,0,0,0)", "12+34");
  const auto kt = fixed(kKT, "14+23");
  for (const auto& [a, b] : {std::pair{t2, t4}, std::pair{kt, t2}}) {
    const ProductStarReport r = product_star_check(a, b);
    EXPECT_TRUE(r.ok()) << r.detail;
    for (std::size_t k = 0; k < r.h_sum.size(); ++k) EXPECT_LE(r.h_bound[k], r.h_sum[k]);
  }
}
