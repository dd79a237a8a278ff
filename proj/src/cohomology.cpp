#include "nilflex/cohomology.hpp"

namespace nilflex {

CohomologyRing::CohomologyRing(const NilpotentLieAlgebra& g)
    : g_(std::make_shared<const NilpotentLieAlgebra>(g)) {
  const int n = g.dim();
  for (int k = 0; k <= n; ++k) {
    Degree deg;
    const std::size_t ambient = g.basis().size(k);
    deg.cocycles = nullspace_basis(g.differential_matrix(k));
    if (k > 0) {
      const QMatrix& prev = g.differential_matrix(k - 1);
      for (std::size_t j = 0; j < prev.cols(); ++j) {
        Vector col = prev.column(j);
        bool zero = true;
        for (const auto& x : col) zero = zero && sgn(x) == 0;
        if (!zero) deg.boundaries.push_back(std::move(col));
      }
      deg.boundary_dim = rank(prev);
    }
    deg.quotient = QuotientMap(ambient, deg.cocycles, deg.boundaries);
    degrees_.push_back(std::move(deg));
  }
}

const CohomologyRing::Degree& CohomologyRing::degree(int k) const {
  if (k < 0 || k > dim()) fail(ErrorKind::InvalidArgument, "degree out of range");
  return degrees_[static_cast<std::size_t>(k)];
}

std::size_t CohomologyRing::betti(int k) const {
  if (k < 0 || k > dim()) return 0;
  return degree(k).quotient.dim();
}

std::vector<std::size_t> CohomologyRing::betti_numbers() const {
  std::vector<std::size_t> b;
  for (int k = 0; k <= dim(); ++k) b.push_back(betti(k));
  return b;
}

std::size_t CohomologyRing::cocycle_dim(int k) const { return degree(k).cocycles.size(); }
std::size_t CohomologyRing::coboundary_dim(int k) const { return degree(k).boundary_dim; }

std::vector<QForm> CohomologyRing::basis(int k) const {
  std::vector<QForm> out;
  for (const auto& r : degree(k).quotient.representatives())
    out.push_back(QForm::from_dense(g_->basis(), k, r));
  return out;
}

CohomClass CohomologyRing::class_of(const QForm& f) const {
  const int k = f.degree();
  Vector dense = f.to_dense(g_->basis());
  return CohomClass{k, degree(k).quotient.coordinates(dense), f};
}

CohomClass CohomologyRing::basis_class(int k, std::size_t i) const {
  const auto& reps = degree(k).quotient.representatives();
  if (i >= reps.size()) fail(ErrorKind::InvalidArgument, "basis index out of range");
  Vector coords(reps.size());
  coords[i] = 1;
  return CohomClass{k, std::move(coords), QForm::from_dense(g_->basis(), k, reps[i])};
}

CohomClass CohomologyRing::make_class(int k, std::span<const Rational> coords) const {
  const auto& reps = degree(k).quotient.representatives();
  if (coords.size() != reps.size()) fail(ErrorKind::Dimension, "coordinate count differs from Betti number");
  Vector rep(g_->basis().size(k));
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (sgn(coords[i]) != 0)
      for (std::size_t j = 0; j < rep.size(); ++j) rep[j] += coords[i] * reps[i][j];
  return CohomClass{k, Vector(coords.begin(), coords.end()), QForm::from_dense(g_->basis(), k, rep)};
}

CohomologyRing CohomologyRing::rebased(int k, std::span<const QForm> reps) const {
  CohomologyRing r = *this;
  Degree& deg = r.degrees_.at(static_cast<std::size_t>(k));
  std::vector<Vector> dense;
  for (const auto& f : reps) {
    if (f.degree() != k && !f.is_zero()) fail(ErrorKind::InvalidArgument, "representative has wrong degree");
    dense.push_back(f.to_dense(g_->basis()));
  }
  deg.quotient = QuotientMap::with_representatives(g_->basis().size(k), deg.cocycles, deg.boundaries, dense);
  return r;
}

CohomClass cup(const CohomologyRing& ring, const CohomClass& a, const CohomClass& b) {
  if (a.degree + b.degree > ring.dim()) fail(ErrorKind::InvalidArgument, "cup product degree exceeds dimension");
  return ring.class_of(wedge(a.representative, b.representative));
}

Rational poincare_pairing(const CohomologyRing& ring, const CohomClass& a, const CohomClass& b) {
  const int n = ring.dim();
  if (a.degree + b.degree != n) fail(ErrorKind::InvalidArgument, "pairing needs complementary degrees");
  if (a.representative.is_zero() || b.representative.is_zero()) return 0;
  return wedge(a.representative, b.representative).coefficient(MultiIndex::top(n));
}

QMatrix pairing_matrix(const CohomologyRing& ring, int k) {
  const int n = ring.dim();
  const auto left = ring.basis(k);
  const auto right = ring.basis(n - k);
  QMatrix m(left.size(), right.size());
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j)
      m(i, j) = wedge(left[i], right[j]).coefficient(MultiIndex::top(n));
  return m;
}

std::size_t cup_image_dim(const CohomologyRing& ring, int p, int q) {
  if (p + q > ring.dim()) return 0;
  const auto a = ring.basis(p);
  const auto b = ring.basis(q);
  std::vector<Vector> image;
  for (const auto& x : a)
    for (const auto& y : b) image.push_back(ring.class_of(wedge(x, y)).coords);
  if (image.empty()) return 0;
  return rank(QMatrix::from_columns(ring.betti(p + q), image));
}

RhoForm rho_form(const CohomologyRing& ring, const CohomClass& omega, int k) {
  const int n = ring.dim();
  if (n % 2) fail(ErrorKind::Dimension, "rho form needs even dimension");
  const int m = n / 2;
  const int deg = 2 * k + 1;
  if (k < 0 || deg > m) fail(ErrorKind::InvalidArgument, "rho form degree out of range");
  if (omega.degree != 2) fail(ErrorKind::InvalidArgument, "omega must be a 2-class");
  QForm power = QForm::unit();
  for (int i = 0; i < m - deg; ++i) power = wedge(power, omega.representative);
  const auto reps = ring.basis(deg);
  RhoForm r;
  r.matrix = QMatrix(reps.size(), reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = 0; j < reps.size(); ++j) {
      r.matrix(i, j) = wedge(reps[i], wedge(power, reps[j])).coefficient(MultiIndex::top(n));
    }
  }
  r.rank = rank(r.matrix);
  return r;
}

}  // namespace nilflex
