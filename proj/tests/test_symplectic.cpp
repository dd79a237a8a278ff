#include <gtest/gtest.h>

#include "nilflex/catalog.hpp"
#include "nilflex/sampler.hpp"
#include "nilflex/symplectic.hpp"

using namespace nilflex;

namespace {

const char* const kCase1 = "(0,0,12,13,23,14-25)";
const char* const kCase2 = "(0,0,0,12,14,15+23+24)";
const char* const kCase5 = "(0,0,0,0,12,13)";
const char* const kTorus6 = "(0,0,0,0,0,0)";
const char* const kKT = "(0,0,12,0)";

SymplecticFamily family_of(const char* s) { return catalog_family(NilpotentLieAlgebra::parse(s)); }

Vector ints(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Vector ones(std::size_t n) { return Vector(n, Rational(1)); }

// Skew matrix of a 2-form, entry (i, j) = coefficient of α_ij.
QMatrix skew_matrix(const QForm& f, int n) {
  QMatrix w(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (const auto& [m, c] : f.terms()) {
    const auto idx = m.indices();
    w(idx[0] - 1, idx[1] - 1) = c;
    w(idx[1] - 1, idx[0] - 1) = -c;
  }
  return w;
}

Rational factorial(int m) {
  Rational r = 1;
  for (int i = 2; i <= m; ++i) r *= i;
  return r;
}

bool column_proportional(const PolyMatrix& m, std::size_t j, const std::vector<MultiPoly>& expected) {
  std::optional<Rational> scale;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const MultiPoly& got = m(i, j);
    if (expected[i].is_zero() || got.is_zero()) {
      if (expected[i].is_zero() != got.is_zero()) return false;
      continue;
    }
    const Rational ratio = got.leading().second / expected[i].leading().second;
    if (scale && *scale != ratio) return false;
    scale = ratio;
    if (!(got == expected[i] * ratio)) return false;
  }
  return scale.has_value();
}

Vector random_symplectic_point(const SymplecticFamily& f, Sampler& s) {
  for (;;) {
    Vector p(f.nparams());
    for (auto& x : p) x = s.uniform(-6, 6);
    if (f.is_symplectic_at(p)) return p;
  }
}

}  // namespace

TEST(Pfaffian, MatchesDisplayedConditions) {
  for (const auto& e : six_dim_catalog()) {
    if (e.pf.empty()) continue;
    const auto f = family_of(e.structure.c_str());
    EXPECT_TRUE(proportional(f.pf, parse_poly(e.pf, f.names))) << e.structure << ": " << to_string(f.pf, f.names);
  }
}

TEST(Pfaffian, VanishesExactlyOnDashRows) {
  for (const auto& e : six_dim_catalog()) {
    const auto f = family_of(e.structure.c_str());
    EXPECT_EQ(f.admits_symplectic(), e.symplectic) << e.structure;
    if (!e.symplectic) {
      EXPECT_EQ(e.h4.size() + e.h5.size(), 0u);
      EXPECT_THROW(moduli_dim(f), Error);
    }
  }
}

TEST(Pfaffian, SquareIsDeterminantOracle) {
  Sampler s(41);
  for (const auto& e : six_dim_catalog()) {
    const auto f = family_of(e.structure.c_str());
    if (!f.admits_symplectic()) continue;
    EXPECT_TRUE(f.pf.is_homogeneous());
    EXPECT_EQ(f.pf.total_degree(), f.m);
    for (int t = 0; t < 3; ++t) {
      Vector p(f.nparams());
      for (auto& x : p) x = s.uniform(-4, 4);
      const Rational pf = f.pf.eval(p);
      const Rational mf = factorial(f.m);
      EXPECT_EQ(pf * pf, mf * mf * determinant(skew_matrix(evaluate(f.omega, p), 6))) << e.structure;
    }
  }
}

TEST(Moduli, ClosedTwoFormsOracle) {
  for (const auto& e : six_dim_catalog()) {
    const auto f = family_of(e.structure.c_str());
    if (!f.admits_symplectic()) continue;
    const auto& g = f.ring.algebra();
    EXPECT_EQ(moduli_dim(f), f.ring.betti(2) + rank(g.differential_matrix(1))) << e.structure;
  }
}

TEST(Moduli, Examples) {
  EXPECT_EQ(moduli_dim(family_of(kCase1)), 8u);
  EXPECT_EQ(moduli_dim(family_of(kCase5)), 11u);
  EXPECT_EQ(moduli_dim(family_of(kTorus6)), 15u);
  EXPECT_THROW(build_family(CohomologyRing(NilpotentLieAlgebra::parse("(0,0,12)"))), Error);
}

TEST(Lefschetz, DisplayedImageColumns) {
  const auto base = family_of(kCase1);
  std::vector<QForm> h4;
  for (const char* t : {"1246", "1256", "1356", "1346+2356"}) h4.push_back(parse_form(t, 6));
  const auto f = build_family(base.ring.rebased(4, h4));
  const LefschetzMatrix lm = lefschetz_matrix(f, 2);
  ASSERT_EQ(lm.matrix.rows(), 4u);
  ASSERT_EQ(lm.matrix.cols(), 4u);
  auto col = [&](std::initializer_list<const char*> entries) {
    std::vector<MultiPoly> v;
    for (const char* e : entries) v.push_back(parse_poly(e, f.names));
    return v;
  };
  EXPECT_TRUE(column_proportional(lm.matrix, 0, col({"-C", "D", "0", "0"})));
  EXPECT_TRUE(column_proportional(lm.matrix, 1, col({"2D", "-2C", "0", "0"})));
  EXPECT_TRUE(column_proportional(lm.matrix, 2, col({"-A", "-2B", "-2C", "-D"})));
  EXPECT_TRUE(column_proportional(lm.matrix, 3, col({"2B", "A", "-2D", "-C"})));
}

TEST(Lefschetz, GenericRanks) {
  const auto c1 = family_of(kCase1), c2 = family_of(kCase2), c5 = family_of(kCase5), t = family_of(kTorus6);
  EXPECT_EQ(generic_rank(lefschetz_matrix(c1, 2), c1, 1).rank, 4u);
  EXPECT_EQ(generic_rank(lefschetz_matrix(c2, 1), c2, 1).rank, 2u);
  EXPECT_EQ(generic_rank(lefschetz_matrix(c5, 2), c5, 1).rank, 8u);
  EXPECT_EQ(generic_rank(lefschetz_matrix(t, 2), t, 1).rank, 15u);
  EXPECT_THROW(lefschetz_matrix(t, 4), Error);
}

TEST(Lefschetz, SemicontinuityAgainstGenericRank) {
  Sampler s(42);
  for (const auto& e : six_dim_catalog()) {
    const auto f = family_of(e.structure.c_str());
    if (!f.admits_symplectic()) continue;
    for (int k : {1, 2}) {
      const auto lm = lefschetz_matrix(f, k);
      const GenericRank gr = generic_rank(lm, f, 7);
      EXPECT_EQ(rank_at(lm, gr.witness), gr.rank);
      for (int t = 0; t < 4; ++t) EXPECT_LE(rank_at(lm, random_symplectic_point(f, s)), gr.rank) << e.structure;
    }
  }
}

TEST(Strata, WitnessPointsOnCaseOne) {
  const auto f = family_of(kCase1);
  EXPECT_EQ(harmonic_betti_via_rank(f, ones(4)).h_top2, 3u);
  EXPECT_EQ(harmonic_betti_via_rank(f, ints({2, -1, 1, 1})).h_top2, 2u);
  EXPECT_EQ(harmonic_betti_via_rank(f, ints({1, 0, 1, 2})).h_top2, 4u);
  for (const auto& p : {ones(4), ints({2, -1, 1, 1})}) EXPECT_EQ(harmonic_betti_via_rank(f, p).h_top1, 0u);
}

TEST(Strata, RankOnDisplayedConditions) {
  const auto c1 = family_of(kCase1);
  const auto lm = lefschetz_matrix(c1, 2);
  const auto cd = make_stratum(c1, "C=D", std::vector<std::string>{"C-D"});
  EXPECT_EQ(rank_on_stratum(lm, c1, cd.conditions, 3).rank, 3u);
  const auto cd2 = make_stratum(c1, "C=D, A=-2B", std::vector<std::string>{"C-D", "A+2B"});
  const RankStratum r = rank_on_stratum(lm, c1, cd2.conditions, 3);
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.witness[2], r.witness[3]);
  EXPECT_EQ(r.witness[0], -2 * r.witness[1]);

  const auto c2 = family_of(kCase2);
  const auto e0 = make_stratum(c2, "E=0", std::vector<std::string>{"E"});
  for (const auto& p : stratum_samples(c2, e0.conditions, 3, 5)) {
    const RankBetti rb = harmonic_betti_via_rank(c2, p);
    EXPECT_EQ(rb.h_top2, 3u);
    EXPECT_EQ(rb.h_top1, 0u);
  }
}

TEST(Strata, OutsideSymplecticRegion) {
  const auto f = family_of(kCase1);
  const auto bad = make_stratum(f, "C=D=0", std::vector<std::string>{"C", "D"});
  try {
    stratum_samples(f, bad.conditions, 2, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoSymplectic);
  }
  const auto nonlinear = make_stratum(f, "C^2", std::vector<std::string>{"C^2"});
  EXPECT_THROW(stratum_samples(f, nonlinear.conditions, 2, 1), Error);
}

TEST(HarmonicBetti, Examples) {
  const auto t = family_of(kTorus6);
  const Vector p = parameters_of(t, parse_form("12+34+56", 6));
  EXPECT_EQ(harmonic_betti_at(t, p, 5), 6u);
  EXPECT_EQ(harmonic_betti_at(t, p, 4), 15u);
  EXPECT_EQ(harmonic_betti_at(t, p, 2), 15u);
  EXPECT_THROW(harmonic_betti_at(t, p, 3), Error);
  EXPECT_TRUE(is_lefschetz_type(t, p));

  const auto c1 = family_of(kCase1);
  EXPECT_FALSE(is_lefschetz_type(c1, ints({1, 0, 1, 2})));
  EXPECT_THROW(harmonic_betti_via_rank(c1, ints({0, 0, 0, 0})), Error);
}

TEST(HarmonicBetti, TopOddIsEven) {
  Sampler s(43);
  for (const auto& e : six_dim_catalog()) {
    const auto f = family_of(e.structure.c_str());
    if (!f.admits_symplectic()) continue;
    for (int t = 0; t < 4; ++t) EXPECT_EQ(harmonic_betti_via_rank(f, random_symplectic_point(f, s)).h_top1 % 2, 0u);
  }
}

TEST(Certificate, FlexibleAndRigidExamples) {
  const auto c1 = family_of(kCase1);
  const auto strata = std::vector<NamedStratum>{make_stratum(c1, "C=D, A=-2B", std::vector<std::string>{"C-D", "A+2B"})};
  const auto cert = flexibility_certificate(c1, strata, 9);
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->degree, 4);
  EXPECT_EQ(cert->rank0, 2u);
  EXPECT_EQ(cert->rank1, 4u);
  EXPECT_TRUE(c1.is_symplectic_at(cert->point0));
  EXPECT_TRUE(c1.is_symplectic_at(cert->point1));
  EXPECT_TRUE(segment_rank_check(c1, cert->point0, cert->point1, cert->degree));

  const auto c2 = family_of(kCase2);
  const auto e0 = std::vector<NamedStratum>{make_stratum(c2, "E=0", std::vector<std::string>{"E"})};
  const auto cert2 = flexibility_certificate(c2, e0, 9);
  ASSERT_TRUE(cert2.has_value());
  EXPECT_LT(cert2->rank0, cert2->rank1);

  const auto t = family_of(kTorus6);
  EXPECT_FALSE(flexibility_certificate(t, {}, 9, 6, 50).has_value());
}

TEST(Certificate, SegmentRejectsEqualRanks) {
  const auto c1 = family_of(kCase1);
  const Vector p = ints({1, 0, 1, 2});
  EXPECT_THROW(segment_trials(c1, p, p, 4), Error);
  EXPECT_THROW(segment_trials(c1, ints({0, 0, 0, 0}), p, 4), Error);
  const SegmentResult r = segment_trials(c1, ints({2, -1, 1, 1}), p, 4);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.trials.size(), 21u);
  EXPECT_EQ(r.trials.front().lambda, Rational(1));
}

TEST(Products, KodairaThurstonTimesTorus) {
  const auto kt = family_of(kKT), t2 = family_of("(0,0)");
  const ProductBetti pb =
      product_harmonic_betti(kt, parameters_of(kt, parse_form("14+23", 4)), t2, parameters_of(t2, parse_form("12", 2)));
  EXPECT_EQ(pb.direct_top1, 4u);
  EXPECT_EQ(pb.direct_top2, 9u);
  EXPECT_TRUE(pb.agrees());
}

TEST(Products, TorusTimesTorus) {
  const auto t2 = family_of("(0,0)"), t4 = family_of("(0,0,0,0)");
  const ProductBetti pb = product_harmonic_betti(t2, parameters_of(t2, parse_form("12", 2)), t4,
                                                 parameters_of(t4, parse_form("12+34", 4)));
  EXPECT_EQ(pb.direct_top1, 6u);
  EXPECT_EQ(pb.direct_top2, 15u);
  EXPECT_TRUE(pb.agrees());
}

TEST(Parameters, RoundTripAndBoundaryInvariance) {
  Sampler s(44);
  for (const char* spec : {kCase1, kCase2, kCase5}) {
    const auto f = family_of(spec);
    const auto& g = f.ring.algebra();
    for (int t = 0; t < 5; ++t) {
      const Vector p = random_symplectic_point(f, s);
      EXPECT_EQ(parameters_of(f, f.omega_at(p)), p);
      const QForm shifted = f.omega_at(p) + g.d(basis_form(MultiIndex::of({6})));
      EXPECT_EQ(parameters_of(f, shifted), p);
    }
    EXPECT_THROW(parameters_of(f, basis_form(MultiIndex::of({5, 6}))), Error);
  }
}
