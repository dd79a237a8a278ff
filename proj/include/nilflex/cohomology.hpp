#pragma once

#include <memory>
#include <span>
#include <vector>

#include "nilflex/algebra.hpp"

namespace nilflex {

/// A cohomology class with its coordinates in the ring's fixed basis of H^k
/// and a cocycle representing it.
struct CohomClass {
  int degree = 0;
  Vector coords;
  QForm representative;
};

/// H*(Λ*g*, d) with an explicit basis of representative cocycles per degree.
///
/// The default basis in degree k consists of kernel vectors of d_k (from the
/// reduced echelon form), kept in order whenever they are independent modulo
/// the boundaries. Any other basis may be installed with `rebased`.
class CohomologyRing {
 public:
  explicit CohomologyRing(const NilpotentLieAlgebra& g);

  const NilpotentLieAlgebra& algebra() const { return *g_; }
  int dim() const { return g_->dim(); }

  std::size_t betti(int k) const;
  std::vector<std::size_t> betti_numbers() const;

  /// Dimensions of cocycles and coboundaries in degree k.
  std::size_t cocycle_dim(int k) const;
  std::size_t coboundary_dim(int k) const;

  /// Basis representatives of H^k.
  std::vector<QForm> basis(int k) const;
  const QuotientMap& quotient(int k) const { return degree(k).quotient; }

  /// Throws NotCocycle when f is not closed.
  CohomClass class_of(const QForm& f) const;
  CohomClass basis_class(int k, std::size_t i) const;
  CohomClass make_class(int k, std::span<const Rational> coords) const;

  /// Same ring with the given cocycles as the basis of H^k. They must form a
  /// basis of the quotient (InvalidArgument otherwise).
  CohomologyRing rebased(int k, std::span<const QForm> reps) const;

 private:
  struct Degree {
    std::vector<Vector> cocycles;    // basis of Z^k
    std::vector<Vector> boundaries;  // spanning set of B^k
    std::size_t boundary_dim = 0;
    QuotientMap quotient;
  };

  const Degree& degree(int k) const;

  std::shared_ptr<const NilpotentLieAlgebra> g_;
  std::vector<Degree> degrees_;
};

inline CohomologyRing compute_cohomology(const NilpotentLieAlgebra& g) { return CohomologyRing(g); }

/// Class of rep(a) ∧ rep(b).
CohomClass cup(const CohomologyRing& ring, const CohomClass& a, const CohomClass& b);

/// Coefficient of α_{1..n} in rep(a) ∧ rep(b); degrees must be complementary.
Rational poincare_pairing(const CohomologyRing& ring, const CohomClass& a, const CohomClass& b);

/// Matrix of the pairing H^k x H^{n-k} in the ring's bases.
QMatrix pairing_matrix(const CohomologyRing& ring, int k);

/// Dimension of the image of the cup product H^p ⊗ H^q -> H^{p+q}.
std::size_t cup_image_dim(const CohomologyRing& ring, int p, int q);

/// Skew form <a, b> = p(a, L^{m-2k-1} b) on H^{2k+1} for a class [ω].
struct RhoForm {
  QMatrix matrix;
  std::size_t rank = 0;
};
RhoForm rho_form(const CohomologyRing& ring, const CohomClass& omega, int k);

}  // namespace nilflex
