#pragma once

#include <string>
#include <vector>

#include "nilflex/cohomology.hpp"

namespace nilflex {

/// A fixed rational symplectic form with its Poisson bivector and volume form.
struct FixedSymplecticForm {
  NilpotentLieAlgebra g;
  int m = 0;
  QForm omega;
  QMatrix w;      // ω = Σ_{i<j} w_ij α_ij, w skew
  QMatrix pi;     // π^{ij} = Π(α_i, α_j)
  QForm volume;   // ω^m / m!
};

/// Sign relating π to the inverse of w, fixed so that [L,δ] = -d.
inline constexpr int kPoissonSign = 1;
/// Sign in i(Π) = s Σ_{i<j} π^{ij} ι_j ι_i, fixed so that δ = i(Π)d - d i(Π).
inline constexpr int kContractionSign = 1;

/// Errors: NotCocycle if dω ≠ 0, Dimension for odd n, Degenerate if ω^m = 0.
FixedSymplecticForm invert_omega(const NilpotentLieAlgebra& g, const QForm& omega);

/// Λ^k(Π)(α_I, α_J) = det[π^{ij}]_{i∈I, j∈J}.
Rational poisson_pairing(const FixedSymplecticForm& f, MultiIndex a, MultiIndex b);

/// Matrices of d, ∗, δ, L, L* and i(Π) per source degree k = 0..n. Maps that
/// leave the range 0..n are stored as matrices with zero rows.
///
/// L* is ∗L∗, the operator with [L, L*] = k - m on k-forms, for which
/// [L*,δ] = 0 and [L*,d] = -δ hold. With this ∗ the contraction i(Π) equals
/// -∗L∗ = -L*.
struct OperatorTable {
  int n = 0;
  std::vector<QMatrix> d, star, delta, L, Lstar, ipi;
};

OperatorTable build_operators(const FixedSymplecticForm& f);

QForm star(const FixedSymplecticForm& f, const QForm& a);
QForm star(const OperatorTable& ops, const ExteriorBasis& basis, const QForm& a);

/// i(Π) as a bivector contraction.
QForm poisson_contraction(const FixedSymplecticForm& f, const QForm& a);

/// (-1)^{k+1} ∗d∗α, cross-checked against i(Π)dα - d i(Π)α (Convention error
/// on disagreement). A 0-form maps to the empty form of degree -1.
QForm koszul_delta(const FixedSymplecticForm& f, const QForm& a);

struct HarmonicProfile {
  std::vector<std::size_t> dim_hr;   // dim Ω^k_hr
  std::vector<std::size_t> h;        // dim Ω_hr / (Im d ∩ Ω_hr)
  std::vector<std::size_t> h_star;   // dim Ω_hr / (Im δ ∩ Ω_hr)
  std::vector<std::size_t> h_delta;  // dim ker δ / Im δ
  std::vector<std::vector<Vector>> harmonic;  // basis of Ω^k_hr (dense)
};

HarmonicProfile harmonic_profile(const FixedSymplecticForm& f, const OperatorTable& ops,
                                 const CohomologyRing& ring);
HarmonicProfile harmonic_profile(const FixedSymplecticForm& f);

struct IdentityCheck {
  std::string name;
  int degree = 0;
  bool ok = true;
  std::string detail;  // counterexample on failure
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool ok() const;
  /// First failing check, formatted; empty when all pass.
  std::string first_failure() const;
};

IdentityReport identity_suite(const FixedSymplecticForm& f, const OperatorTable& ops, const HarmonicProfile& hp,
                              const CohomologyRing& ring);
IdentityReport identity_suite(const FixedSymplecticForm& f);

/// Checks ∗(α⊠β) = (-1)^{pq}(∗₁α)⊠(∗₂β) on all basis pairs, Ω^p_hr ⊠ Ω^q_hr ⊂
/// Ω^{p+q}_hr, and Σ_{p+q=k} h_p h_q <= h_k on g1 ⊕ g2 with ω₁ ⊕ ω₂.
struct ProductStarReport {
  bool star_ok = true;
  bool inclusion_ok = true;
  bool betti_bound_ok = true;
  std::vector<std::size_t> h_sum;    // h_k of the sum
  std::vector<std::size_t> h_bound;  // Σ h_p h_q
  std::string detail;
  bool ok() const { return star_ok && inclusion_ok && betti_bound_ok; }
};

ProductStarReport product_star_check(const FixedSymplecticForm& f1, const FixedSymplecticForm& f2);

}  // namespace nilflex
