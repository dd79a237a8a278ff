#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilflex/cohomology.hpp"

namespace nilflex {

/// Generic closed 2-form ω = Σ p_i z_i over a basis z_1..z_b of H², with one
/// parameter per class (named A, B, C, ... in basis order).
struct SymplecticFamily {
  CohomologyRing ring;
  int m = 0;                       // half the dimension
  std::vector<std::string> names;  // parameter names
  PolyForm omega;
  MultiPoly pf;  // coefficient of α_{1..2m} in ω^m

  std::size_t nparams() const { return names.size(); }
  bool admits_symplectic() const { return !pf.is_zero(); }
  bool is_symplectic_at(std::span<const Rational> point) const;
  /// The rational 2-form at a parameter point.
  QForm omega_at(std::span<const Rational> point) const;
};

/// Dimension error for odd-dimensional algebras.
SymplecticFamily build_family(const CohomologyRing& ring);

/// dim Z²(g*). Throws NoSymplectic when Pf vanishes identically.
std::size_t moduli_dim(const SymplecticFamily& family);

/// L^{m-k}: H^k -> H^{2m-k} with polynomial entries in the family parameters.
struct LefschetzMatrix {
  int k = 0;
  int power = 0;
  PolyMatrix matrix;
};

LefschetzMatrix lefschetz_matrix(const SymplecticFamily& family, int k);

/// Exact rank of the Lefschetz matrix at a parameter point.
std::size_t rank_at(const LefschetzMatrix& lm, std::span<const Rational> point);

/// Random points with Pf ≠ 0, coordinates in [-10, 10].
std::vector<Vector> symplectic_samples(const SymplecticFamily& family, std::size_t count, std::uint64_t seed);

/// Generic rank: the maximum over sampled symplectic points, stopping early at
/// min(rows, cols). The witness point certifies the lower bound.
struct GenericRank {
  std::size_t rank = 0;
  Vector witness;
};
GenericRank generic_rank(const LefschetzMatrix& lm, const SymplecticFamily& family, std::uint64_t seed,
                         std::size_t samples = 12);

/// A stratum given by polynomial conditions c = 0 on the parameters. Each
/// condition must be of degree one in some parameter that does not occur in
/// earlier conditions; that parameter is solved for at random values of the
/// others.
struct RankStratum {
  std::string label;
  std::vector<MultiPoly> conditions;
  std::size_t rank = 0;
  Vector witness;
};

/// Points on the stratum with Pf ≠ 0. Throws NoSymplectic ("stratum outside
/// symplectic region") if the search fails.
std::vector<Vector> stratum_samples(const SymplecticFamily& family, std::span<const MultiPoly> conditions,
                                    std::size_t count, std::uint64_t seed);

RankStratum rank_on_stratum(const LefschetzMatrix& lm, const SymplecticFamily& family,
                            std::span<const MultiPoly> conditions, std::uint64_t seed, std::size_t samples = 8);

/// h_{2m-1}, h_{2m-2} and, under Lefschetz type, h_{2m-3} from ranks of
/// Lefschetz maps. Without Lefschetz type, rho3_bound carries rank L^{m-3}
/// on H³ as an upper bound only.
struct RankBetti {
  std::size_t h_top1 = 0;  // h_{2m-1}
  std::size_t h_top2 = 0;  // h_{2m-2}
  std::optional<std::size_t> h_top3;
  std::optional<std::size_t> rho3_bound;
  bool lefschetz_type = false;
};

/// Throws NoSymplectic at a degenerate point.
RankBetti harmonic_betti_via_rank(const SymplecticFamily& family, std::span<const Rational> point);

/// rank L^{m-1}: H¹ -> H^{2m-1} equals b₁.
bool is_lefschetz_type(const SymplecticFamily& family, std::span<const Rational> point);

/// h_j at a point from the rank formula, for j >= m; h_j = b_j for j <= 2.
std::size_t harmonic_betti_at(const SymplecticFamily& family, std::span<const Rational> point, int j);

struct FlexibilityCertificate {
  int degree = 0;  // 2m-2 or 2m-1 (or 2m-3)
  Vector point0, point1;
  std::size_t rank0 = 0, rank1 = 0;  // rank0 < rank1
  std::string label0;                // where point0 came from
};

/// A named stratum to try before random sampling.
struct NamedStratum {
  std::string label;
  std::vector<MultiPoly> conditions;
};

/// Parses conditions such as "C-D" or "EB+3D^2" in the family's parameter names.
NamedStratum make_stratum(const SymplecticFamily& family, std::string label, std::span<const std::string> conditions);

/// Observed ranks of the top Lefschetz maps at one point.
struct RankObservation {
  std::string label;
  Vector point;
  std::size_t h_top1 = 0, h_top2 = 0;
  std::optional<std::size_t> h_top3;
};

/// Ranks at the given strata, at random symplectic points, and at symplectic
/// points of the small lattice {-2..2}^b. Small lattice points land on
/// rank-drop loci far more often than wide random draws; of the
/// `lattice_draws` draws only those showing a new rank combination are kept.
std::vector<RankObservation> observe_ranks(const SymplecticFamily& family, std::span<const NamedStratum> strata,
                                           std::uint64_t seed, std::size_t random_points = 6,
                                           std::size_t lattice_draws = 0);

/// Two exact symplectic points at which some h_{2m-i} differs, if one is found.
std::optional<FlexibilityCertificate> flexibility_certificate(const SymplecticFamily& family,
                                                              std::span<const NamedStratum> strata,
                                                              std::uint64_t seed, std::size_t random_points = 6,
                                                              std::size_t lattice_draws = 0);
std::optional<FlexibilityCertificate> flexibility_certificate(std::span<const RankObservation> observations, int m);

/// Dyadic trials λ = 2^{-j}, j = 0..20, of ω₀ + λω₁.
struct SegmentTrial {
  Rational lambda;
  bool symplectic = false;
  std::size_t rank = 0;
};
struct SegmentResult {
  bool ok = false;  // some trial is symplectic with rank >= rank(point1)
  std::vector<SegmentTrial> trials;
};

/// `degree` is the cohomological degree 2m-i of the harmonic space.
/// InvalidArgument unless both points are symplectic and rank(point0) < rank(point1).
SegmentResult segment_trials(const SymplecticFamily& family, std::span<const Rational> point0,
                             std::span<const Rational> point1, int degree);
bool segment_rank_check(const SymplecticFamily& family, std::span<const Rational> point0,
                        std::span<const Rational> point1, int degree);

/// h_{2(m+n)-1} and h_{2(m+n)-2} of g1 ⊕ g2 with ω₁ ⊕ ω₂, computed directly on
/// the sum and through the product formulas.
struct ProductBetti {
  std::size_t direct_top1 = 0, direct_top2 = 0;
  std::size_t formula_top1 = 0, formula_top2 = 0;
  bool agrees() const { return direct_top1 == formula_top1 && direct_top2 == formula_top2; }
};
ProductBetti product_harmonic_betti(const SymplecticFamily& f1, std::span<const Rational> p1,
                                    const SymplecticFamily& f2, std::span<const Rational> p2);

/// Parameter point of a closed rational 2-form in the family's H² basis.
Vector parameters_of(const SymplecticFamily& family, const QForm& omega);

}  // namespace nilflex
