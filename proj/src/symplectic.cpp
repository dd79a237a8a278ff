#include "nilflex/symplectic.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "nilflex/sampler.hpp"

namespace nilflex {

namespace {

constexpr long kSampleRange = 10;
constexpr long kLatticeRadius = 2;

void check_point(const SymplecticFamily& f, std::span<const Rational> point) {
  if (point.size() != f.nparams())
    fail(ErrorKind::Dimension, "expected " + std::to_string(f.nparams()) + " parameters, got " +
                                   std::to_string(point.size()));
}

void require_symplectic(const SymplecticFamily& f, std::span<const Rational> point) {
  if (!f.is_symplectic_at(point)) fail(ErrorKind::NoSymplectic, "point is not symplectic (Pf = 0)");
}

PolyForm power_of(const PolyForm& omega, int e) {
  PolyForm r = PolyForm::unit();
  for (int i = 0; i < e; ++i) r = wedge(r, omega);
  return r;
}

Vector random_point(Sampler& s, std::size_t n) {
  Vector p(n);
  for (auto& x : p) x = Rational(s.uniform(-kSampleRange, kSampleRange));
  return p;
}

// Lefschetz matrices for the top three harmonic degrees, built once.
struct TopMaps {
  std::optional<LefschetzMatrix> l1, l2, l3;  // sources H¹, H², H³

  explicit TopMaps(const SymplecticFamily& f) {
    if (f.m >= 1) l1 = lefschetz_matrix(f, 1);
    if (f.m >= 2) l2 = lefschetz_matrix(f, 2);
    if (f.m >= 3) l3 = lefschetz_matrix(f, 3);
  }
};

std::size_t top_rank(const SymplecticFamily& f, const TopMaps& maps, std::span<const Rational> point, int i) {
  // h_{2m-i} for i = 1, 2, 3; for small m this is a low degree equal to b_j.
  const int j = 2 * f.m - i;
  if (j <= 2 && j < f.m) return f.ring.betti(j);
  const auto& lm = i == 1 ? maps.l1 : i == 2 ? maps.l2 : maps.l3;
  return rank_at(*lm, point);
}

RankBetti rank_betti(const SymplecticFamily& f, const TopMaps& maps, std::span<const Rational> point) {
  check_point(f, point);
  require_symplectic(f, point);
  RankBetti r;
  r.h_top1 = top_rank(f, maps, point, 1);
  r.h_top2 = top_rank(f, maps, point, 2);
  r.lefschetz_type = f.m >= 1 && rank_at(*maps.l1, point) == f.ring.betti(1);
  if (f.m >= 3) {
    const std::size_t r3 = rank_at(*maps.l3, point);
    if (r.lefschetz_type) r.h_top3 = r3;
    else r.rho3_bound = r3;
  }
  return r;
}

}  // namespace

bool SymplecticFamily::is_symplectic_at(std::span<const Rational> point) const {
  check_point(*this, point);
  return !pf.is_zero() && sgn(pf.eval(point)) != 0;
}

QForm SymplecticFamily::omega_at(std::span<const Rational> point) const {
  check_point(*this, point);
  QForm r = evaluate(omega, point);
  if (r.is_zero()) return QForm(2);
  return r;
}

SymplecticFamily build_family(const CohomologyRing& ring) {
  const int n = ring.dim();
  if (n % 2) fail(ErrorKind::Dimension, "odd dimension " + std::to_string(n) + " has no symplectic forms");
  SymplecticFamily f{ring, n / 2, {}, PolyForm(2), MultiPoly()};
  const auto reps = ring.basis(2);
  f.names = default_variable_names(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const MultiPoly p = MultiPoly::variable(reps.size(), i);
    for (const auto& [mi, c] : reps[i].terms()) f.omega.add(mi, p * c);
  }
  f.pf = power_of(f.omega, f.m).coefficient(MultiIndex::top(n));
  return f;
}

std::size_t moduli_dim(const SymplecticFamily& family) {
  if (!family.admits_symplectic()) fail(ErrorKind::NoSymplectic, "no symplectic structure");
  return family.ring.cocycle_dim(2);
}

LefschetzMatrix lefschetz_matrix(const SymplecticFamily& family, int k) {
  const int m = family.m;
  if (k < 0 || k > m) fail(ErrorKind::InvalidArgument, "Lefschetz source degree must lie in 0..m");
  const auto& ring = family.ring;
  const auto& basis = ring.algebra().basis();
  const int target = 2 * m - k;
  const PolyForm power = power_of(family.omega, m - k);
  const auto reps = ring.basis(k);
  std::vector<std::vector<MultiPoly>> columns;
  for (const auto& r : reps) {
    PolyForm image = wedge(power, to_poly(r, family.nparams()));
    if (image.is_zero()) image = PolyForm(target);
    columns.push_back(ring.quotient(target).coordinates(image.to_dense(basis)));
  }
  LefschetzMatrix lm{k, m - k, PolyMatrix(ring.betti(target), reps.size())};
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < columns[j].size(); ++i) lm.matrix(i, j) = columns[j][i];
  return lm;
}

std::size_t rank_at(const LefschetzMatrix& lm, std::span<const Rational> point) {
  return rank(evaluate(lm.matrix, point));
}

std::vector<Vector> symplectic_samples(const SymplecticFamily& family, std::size_t count, std::uint64_t seed) {
  if (!family.admits_symplectic()) fail(ErrorKind::NoSymplectic, "no symplectic structure");
  Sampler s(seed);
  std::vector<Vector> out;
  for (std::size_t attempt = 0; out.size() < count && attempt < 200 * count + 200; ++attempt) {
    Vector p = random_point(s, family.nparams());
    if (sgn(family.pf.eval(p)) != 0) out.push_back(std::move(p));
  }
  if (out.empty()) fail(ErrorKind::NoSymplectic, "no symplectic sample found");
  return out;
}

GenericRank generic_rank(const LefschetzMatrix& lm, const SymplecticFamily& family, std::uint64_t seed,
                         std::size_t samples) {
  const std::size_t bound = std::min(lm.matrix.rows(), lm.matrix.cols());
  GenericRank g;
  for (auto& p : symplectic_samples(family, samples, seed)) {
    const std::size_t r = rank_at(lm, p);
    if (g.witness.empty() || r > g.rank) {
      g.rank = r;
      g.witness = std::move(p);
    }
    if (g.rank == bound) break;
  }
  return g;
}

std::vector<Vector> stratum_samples(const SymplecticFamily& family, std::span<const MultiPoly> conditions,
                                    std::size_t count, std::uint64_t seed) {
  if (!family.admits_symplectic()) fail(ErrorKind::NoSymplectic, "no symplectic structure");
  const std::size_t n = family.nparams();
  std::vector<MultiPoly> conds;
  for (const auto& c : conditions) conds.push_back(c.widened(n));

  // Pick the solved variable of each condition: linear in it, and absent from
  // all earlier conditions so that later solves do not disturb earlier ones.
  std::vector<std::size_t> solve(conds.size());
  for (std::size_t i = 0; i < conds.size(); ++i) {
    bool found = false;
    for (std::size_t v = n; v-- > 0 && !found;) {
      if (conds[i].degree_in(v) != 1) continue;
      bool fresh = true;
      for (std::size_t j = 0; j < i; ++j) fresh = fresh && conds[j].degree_in(v) <= 0 && solve[j] != v;
      if (fresh) {
        solve[i] = v;
        found = true;
      }
    }
    if (!found)
      fail(ErrorKind::InvalidArgument, "condition is not linear in any free parameter");
  }

  Sampler s(seed);
  std::vector<Vector> out;
  for (std::size_t attempt = 0; out.size() < count && attempt < 400 * count + 400; ++attempt) {
    Vector p = random_point(s, n);
    bool ok = true;
    for (std::size_t i = 0; i < conds.size() && ok; ++i) {
      const auto coeffs = conds[i].coefficients_in(solve[i]);
      const Rational a = coeffs.size() > 1 ? coeffs[1].eval(p) : Rational(0);
      if (sgn(a) == 0) {
        ok = false;
        break;
      }
      p[solve[i]] = -coeffs[0].eval(p) / a;
    }
    if (!ok) continue;
    for (const auto& c : conds) ok = ok && sgn(c.eval(p)) == 0;
    if (ok && sgn(family.pf.eval(p)) != 0) out.push_back(std::move(p));
  }
  if (out.empty()) fail(ErrorKind::NoSymplectic, "stratum outside symplectic region");
  return out;
}

RankStratum rank_on_stratum(const LefschetzMatrix& lm, const SymplecticFamily& family,
                            std::span<const MultiPoly> conditions, std::uint64_t seed, std::size_t samples) {
  RankStratum st;
  st.conditions.assign(conditions.begin(), conditions.end());
  for (auto& p : stratum_samples(family, conditions, samples, seed)) {
    const std::size_t r = rank_at(lm, p);
    if (st.witness.empty() || r > st.rank) {
      st.rank = r;
      st.witness = std::move(p);
    }
  }
  return st;
}

RankBetti harmonic_betti_via_rank(const SymplecticFamily& family, std::span<const Rational> point) {
  return rank_betti(family, TopMaps(family), point);
}

bool is_lefschetz_type(const SymplecticFamily& family, std::span<const Rational> point) {
  check_point(family, point);
  require_symplectic(family, point);
  return rank_at(lefschetz_matrix(family, 1), point) == family.ring.betti(1);
}

std::size_t harmonic_betti_at(const SymplecticFamily& family, std::span<const Rational> point, int j) {
  check_point(family, point);
  require_symplectic(family, point);
  const int m = family.m;
  if (j <= 2) return family.ring.betti(j);
  if (j < 2 * m - 2 || j > 2 * m)
    fail(ErrorKind::InvalidArgument, "rank formula covers h_j only for j <= 2 or j >= 2m-2");
  return rank_at(lefschetz_matrix(family, 2 * m - j), point);
}

NamedStratum make_stratum(const SymplecticFamily& family, std::string label,
                          std::span<const std::string> conditions) {
  NamedStratum s{std::move(label), {}};
  for (const auto& c : conditions) s.conditions.push_back(parse_poly(c, family.names).widened(family.nparams()));
  return s;
}

std::vector<RankObservation> observe_ranks(const SymplecticFamily& family, std::span<const NamedStratum> strata,
                                           std::uint64_t seed, std::size_t random_points,
                                           std::size_t lattice_draws) {
  const TopMaps maps(family);
  std::vector<RankObservation> obs;
  auto record = [&](std::string label, Vector p) {
    const RankBetti rb = rank_betti(family, maps, p);
    obs.push_back({std::move(label), std::move(p), rb.h_top1, rb.h_top2, rb.h_top3});
  };
  for (const auto& st : strata) {
    auto pts = stratum_samples(family, st.conditions, 3, derive_seed(seed, st.label));
    for (auto& p : pts) record(st.label, std::move(p));
  }
  auto pts = symplectic_samples(family, random_points, derive_seed(seed, "random"));
  for (auto& p : pts) record("random", std::move(p));

  Sampler s(derive_seed(seed, "lattice"));
  std::set<std::tuple<std::size_t, std::size_t, std::optional<std::size_t>>> seen;
  for (std::size_t t = 0; t < lattice_draws; ++t) {
    Vector p(family.nparams());
    for (auto& x : p) x = Rational(s.uniform(-kLatticeRadius, kLatticeRadius));
    if (!family.is_symplectic_at(p)) continue;
    const RankBetti rb = rank_betti(family, maps, p);
    if (seen.emplace(rb.h_top1, rb.h_top2, rb.h_top3).second)
      obs.push_back({"lattice", std::move(p), rb.h_top1, rb.h_top2, rb.h_top3});
  }
  return obs;
}

std::optional<FlexibilityCertificate> flexibility_certificate(std::span<const RankObservation> observations,
                                                              int m) {
  if (observations.empty()) return std::nullopt;
  for (int i : {2, 1, 3}) {
    auto value = [i](const RankObservation& o) -> std::optional<std::size_t> {
      if (i == 1) return o.h_top1;
      if (i == 2) return o.h_top2;
      return o.h_top3;
    };
    const RankObservation* lo = nullptr;
    const RankObservation* hi = nullptr;
    for (const auto& o : observations) {
      const auto v = value(o);
      if (!v) continue;
      if (!lo || *v < *value(*lo)) lo = &o;
      if (!hi || *v > *value(*hi)) hi = &o;
    }
    if (lo && hi && *value(*lo) != *value(*hi))
      return FlexibilityCertificate{2 * m - i, lo->point, hi->point, *value(*lo), *value(*hi), lo->label};
  }
  return std::nullopt;
}

std::optional<FlexibilityCertificate> flexibility_certificate(const SymplecticFamily& family,
                                                              std::span<const NamedStratum> strata,
                                                              std::uint64_t seed, std::size_t random_points,
                                                              std::size_t lattice_draws) {
  const auto obs = observe_ranks(family, strata, seed, random_points, lattice_draws);
  return flexibility_certificate(obs, family.m);
}

SegmentResult segment_trials(const SymplecticFamily& family, std::span<const Rational> point0,
                             std::span<const Rational> point1, int degree) {
  check_point(family, point0);
  check_point(family, point1);
  if (!family.is_symplectic_at(point0) || !family.is_symplectic_at(point1))
    fail(ErrorKind::InvalidArgument, "segment endpoints must be symplectic");
  const int m = family.m;
  const int i = 2 * m - degree;
  if (i < 0 || i > m) fail(ErrorKind::InvalidArgument, "degree must lie in m..2m");
  const LefschetzMatrix lm = lefschetz_matrix(family, i);
  const std::size_t r0 = rank_at(lm, point0), r1 = rank_at(lm, point1);
  if (r0 >= r1) fail(ErrorKind::InvalidArgument, "segment check needs rank(point0) < rank(point1)");
  SegmentResult res;
  Rational lambda = 1;
  for (int j = 0; j <= 20; ++j, lambda /= 2) {
    Vector q(point0.size());
    for (std::size_t t = 0; t < q.size(); ++t) q[t] = point0[t] + lambda * point1[t];
    SegmentTrial trial{lambda, family.is_symplectic_at(q), 0};
    if (trial.symplectic) trial.rank = rank_at(lm, q);
    res.ok = res.ok || (trial.symplectic && trial.rank >= r1);
    res.trials.push_back(trial);
  }
  return res;
}

bool segment_rank_check(const SymplecticFamily& family, std::span<const Rational> point0,
                        std::span<const Rational> point1, int degree) {
  return segment_trials(family, point0, point1, degree).ok;
}

Vector parameters_of(const SymplecticFamily& family, const QForm& omega) {
  if (omega.is_zero()) return Vector(family.nparams());
  if (omega.degree() != 2) fail(ErrorKind::InvalidArgument, "omega must be a 2-form");
  return family.ring.class_of(omega).coords;
}

ProductBetti product_harmonic_betti(const SymplecticFamily& f1, std::span<const Rational> p1,
                                    const SymplecticFamily& f2, std::span<const Rational> p2) {
  check_point(f1, p1);
  check_point(f2, p2);
  require_symplectic(f1, p1);
  require_symplectic(f2, p2);
  const auto& g1 = f1.ring.algebra();
  const NilpotentLieAlgebra g = direct_sum(g1, f2.ring.algebra());
  const SymplecticFamily f = build_family(CohomologyRing(g));
  const QForm omega = f1.omega_at(p1) + f2.omega_at(p2).shifted(g1.dim());
  const Vector p = parameters_of(f, omega);
  const int M = f.m, m = f1.m, n = f2.m;

  ProductBetti r;
  r.direct_top1 = harmonic_betti_at(f, p, 2 * M - 1);
  r.direct_top2 = harmonic_betti_at(f, p, 2 * M - 2);
  const std::size_t a1 = harmonic_betti_at(f1, p1, 2 * m - 1), a2 = harmonic_betti_at(f1, p1, 2 * m - 2);
  const std::size_t c1 = harmonic_betti_at(f2, p2, 2 * n - 1), c2 = harmonic_betti_at(f2, p2, 2 * n - 2);
  r.formula_top1 = a1 + c1;
  r.formula_top2 = a2 + a1 * c1 + c2;
  return r;
}

}  // namespace nilflex
