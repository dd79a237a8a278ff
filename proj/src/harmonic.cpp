#include "nilflex/harmonic.hpp"

namespace nilflex {

namespace {

QMatrix zero(std::size_t rows, std::size_t cols) { return QMatrix(rows, cols); }

QMatrix vstack(const QMatrix& a, const QMatrix& b) {
  QMatrix r(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

// Matrix of a linear map Λ^k -> Λ^{k+shift} given on basis forms.
template <typename Fn>
QMatrix operator_matrix(const ExteriorBasis& basis, int k, int shift, Fn&& fn) {
  const auto& src = basis.degree(k);
  QMatrix m(basis.size(k + shift), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    const QForm img = fn(basis_form(src[j]));
    for (const auto& [t, c] : img.terms()) m(basis.position(t), j) = c;
  }
  return m;
}

// Accessors that return correctly shaped zero maps outside 0..n.
struct Ops {
  const OperatorTable& t;
  const ExteriorBasis& basis;

  std::size_t size(int k) const { return basis.size(k); }
  bool in(int k) const { return k >= 0 && k <= t.n; }
  QMatrix d(int k) const { return in(k) ? t.d[k] : zero(size(k + 1), size(k)); }
  QMatrix delta(int k) const { return in(k) ? t.delta[k] : zero(size(k - 1), size(k)); }
  QMatrix L(int k) const { return in(k) ? t.L[k] : zero(size(k + 2), size(k)); }
  QMatrix Ls(int k) const { return in(k) ? t.Lstar[k] : zero(size(k - 2), size(k)); }
  QMatrix ipi(int k) const { return in(k) ? t.ipi[k] : zero(size(k - 2), size(k)); }
};

std::vector<Vector> columns_of(const QMatrix& m) {
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return cols;
}

bool is_zero_vector(const Vector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

std::size_t class_rank(const CohomologyRing& ring, int k, const std::vector<Vector>& forms) {
  if (forms.empty() || ring.betti(k) == 0) return 0;
  std::vector<Vector> coords;
  for (const auto& v : forms) coords.push_back(ring.quotient(k).coordinates(v));
  return rank(QMatrix::from_columns(ring.betti(k), coords));
}

}  // namespace

FixedSymplecticForm invert_omega(const NilpotentLieAlgebra& g, const QForm& omega) {
  const int n = g.dim();
  if (n % 2) fail(ErrorKind::Dimension, "odd dimension " + std::to_string(n));
  if (!omega.is_zero() && omega.degree() != 2) fail(ErrorKind::InvalidArgument, "omega must be a 2-form");
  if (!omega.is_zero() && !g.d(omega).is_zero())
    fail(ErrorKind::NotCocycle, "omega is not closed: d omega = " + to_string(g.d(omega)));
  FixedSymplecticForm f{g, n / 2, omega.is_zero() ? QForm(2) : omega, QMatrix(n, n), QMatrix(n, n), QForm(n)};
  for (const auto& [mi, c] : f.omega.terms()) {
    const auto idx = mi.indices();
    const auto i = static_cast<std::size_t>(idx[0] - 1), j = static_cast<std::size_t>(idx[1] - 1);
    f.w(i, j) = c;
    f.w(j, i) = -c;
  }
  QForm v = QForm::unit();
  Rational factorial = 1;
  for (int i = 1; i <= f.m; ++i) {
    v = wedge(v, f.omega);
    factorial *= i;
  }
  if (v.is_zero())
    fail(ErrorKind::Degenerate, "degenerate omega: Pfaffian " + to_string(determinant(f.w)) + " (omega^m = 0)");
  f.volume = Rational(1 / factorial) * v;
  f.pi = inverse(f.w);
  if (kPoissonSign < 0) f.pi = -f.pi;
  return f;
}

Rational poisson_pairing(const FixedSymplecticForm& f, MultiIndex a, MultiIndex b) {
  if (a.degree() != b.degree()) fail(ErrorKind::InvalidArgument, "pairing needs equal degrees");
  if (a.degree() == 0) return 1;
  std::vector<std::size_t> rows, cols;
  for (int i : a.indices()) rows.push_back(static_cast<std::size_t>(i - 1));
  for (int j : b.indices()) cols.push_back(static_cast<std::size_t>(j - 1));
  return determinant(f.pi.submatrix(rows, cols));
}

QForm poisson_contraction(const FixedSymplecticForm& f, const QForm& a) {
  const int k = a.degree();
  QForm r(k - 2);
  if (k < 2 || a.is_zero()) return r;
  const int n = f.g.dim();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const Rational& p = f.pi(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
      if (sgn(p) == 0) continue;
      r += Rational(kContractionSign * p) * a.contract(i).contract(j);
    }
  return r;
}

OperatorTable build_operators(const FixedSymplecticForm& f) {
  const auto& basis = f.g.basis();
  const int n = f.g.dim();
  const Rational vtop = f.volume.coefficient(MultiIndex::top(n));
  const MultiIndex top = MultiIndex::top(n);
  OperatorTable t;
  t.n = n;
  for (int k = 0; k <= n; ++k) {
    t.d.push_back(f.g.differential_matrix(k));

    // β ∧ ∗α = Λ^k(Π)(β, α) v for all basis β: P x = R with P the wedge pairing.
    const auto& src = basis.degree(k);
    const auto& dual = basis.degree(n - k);
    QMatrix P(src.size(), dual.size()), R(src.size(), src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
      for (std::size_t j = 0; j < dual.size(); ++j)
        if (src[i].bits() + dual[j].bits() == top.bits()) P(i, j) = wedge_sign(src[i], dual[j]);
      for (std::size_t j = 0; j < src.size(); ++j) R(i, j) = poisson_pairing(f, src[i], src[j]) * vtop;
    }
    t.star.push_back(inverse(P) * R);

    t.L.push_back(operator_matrix(basis, k, 2, [&](const QForm& a) { return wedge(f.omega, a); }));
    t.ipi.push_back(k >= 2 ? operator_matrix(basis, k, -2, [&](const QForm& a) { return poisson_contraction(f, a); })
                           : zero(0, basis.size(k)));
  }
  for (int k = 0; k <= n; ++k) {
    if (k == 0) {
      t.delta.push_back(zero(0, 1));
    } else {
      QMatrix dl = t.star[n - k + 1] * t.d[n - k] * t.star[k];
      t.delta.push_back((k + 1) % 2 ? -dl : dl);
    }
    if (k < 2) t.Lstar.push_back(zero(0, basis.size(k)));
    else t.Lstar.push_back(t.star[n - k + 2] * t.L[n - k] * t.star[k]);
  }
  return t;
}

QForm star(const OperatorTable& ops, const ExteriorBasis& basis, const QForm& a) {
  const int k = a.degree();
  const Vector v = ops.star.at(static_cast<std::size_t>(k)) * std::span<const Rational>(a.to_dense(basis));
  return QForm::from_dense(basis, ops.n - k, v);
}

QForm star(const FixedSymplecticForm& f, const QForm& a) { return star(build_operators(f), f.g.basis(), a); }

QForm koszul_delta(const FixedSymplecticForm& f, const QForm& a) {
  const int k = a.degree();
  if (k == 0) return QForm(-1);
  const auto& basis = f.g.basis();
  const OperatorTable ops = build_operators(f);
  const Vector dense = ops.delta[k] * std::span<const Rational>(a.to_dense(basis));
  const QForm primary = QForm::from_dense(basis, k - 1, dense);

  QForm bracket = poisson_contraction(f, f.g.d(a));
  if (k >= 2) bracket -= f.g.d(poisson_contraction(f, a));
  if (bracket.to_dense(basis) != dense)
    fail(ErrorKind::Convention, "Koszul differential mismatch on " + to_string(a) + ": " + to_string(primary) +
                                    " vs " + to_string(bracket));
  return primary;
}

HarmonicProfile harmonic_profile(const FixedSymplecticForm& f, const OperatorTable& ops,
                                 const CohomologyRing& ring) {
  const int n = ops.n;
  const auto& basis = f.g.basis();
  HarmonicProfile hp;
  for (int k = 0; k <= n; ++k) {
    const QMatrix& d = ops.d[k];
    const QMatrix& dl = ops.delta[k];
    auto hr = nullspace_basis(vstack(d, dl));
    hp.dim_hr.push_back(hr.size());
    hp.h.push_back(class_rank(ring, k, hr));
    std::vector<Vector> im_delta;
    if (k < n) im_delta = columns_of(ops.delta[k + 1]);
    hp.h_star.push_back(hr.size() - intersection_dim(basis.size(k), im_delta, hr));
    const std::size_t ker_delta = basis.size(k) - rank(dl);
    hp.h_delta.push_back(ker_delta - (k < n ? rank(ops.delta[k + 1]) : 0));
    hp.harmonic.push_back(std::move(hr));
  }
  return hp;
}

HarmonicProfile harmonic_profile(const FixedSymplecticForm& f) {
  return harmonic_profile(f, build_operators(f), CohomologyRing(f.g));
}

bool IdentityReport::ok() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

std::string IdentityReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.ok) return c.name + " fails in degree " + std::to_string(c.degree) + ": " + c.detail;
  return {};
}

IdentityReport identity_suite(const FixedSymplecticForm& f, const OperatorTable& t, const HarmonicProfile& hp,
                              const CohomologyRing& ring) {
  const auto& basis = f.g.basis();
  const Ops o{t, basis};
  const int n = t.n, m = f.m;
  IdentityReport rep;

  auto expect_zero = [&](std::string name, int k, const QMatrix& z) {
    IdentityCheck c{std::move(name), k, true, {}};
    for (std::size_t j = 0; j < z.cols() && c.ok; ++j) {
      const Vector col = z.column(j);
      if (!is_zero_vector(col)) {
        c.ok = false;
        c.detail = "on basis form a" + to_string(basis.degree(k)[j]);
      }
    }
    rep.checks.push_back(std::move(c));
  };
  auto expect = [&](std::string name, int k, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), k, ok, ok ? std::string() : std::move(detail)});
  };

  for (int k = 0; k <= n; ++k) {
    expect_zero("star^2 = id", k, t.star[n - k] * t.star[k] - QMatrix::identity(basis.size(k)));
    expect_zero("[L,d] = 0", k, o.L(k + 1) * o.d(k) - o.d(k + 2) * o.L(k));
    expect_zero("[L,delta] = -d", k, o.L(k - 1) * o.delta(k) - o.delta(k + 2) * o.L(k) + o.d(k));
    expect_zero("[L*,delta] = 0", k, o.Ls(k - 1) * o.delta(k) - o.delta(k - 2) * o.Ls(k));
    expect_zero("[L*,d] = -delta", k, o.Ls(k + 1) * o.d(k) - o.d(k - 2) * o.Ls(k) + o.delta(k));
    expect_zero("Laplacian = 0", k, o.d(k - 1) * o.delta(k) + o.delta(k + 1) * o.d(k));
    expect_zero("i(Pi) = -*L*", k, o.ipi(k) + o.Ls(k));
    expect_zero("delta = [i(Pi),d]", k, o.delta(k) - (o.ipi(k + 1) * o.d(k) - o.d(k - 2) * o.ipi(k)));
    expect("H_delta = H", k, hp.h_delta[k] == ring.betti(k),
           "dim H_delta = " + std::to_string(hp.h_delta[k]) + ", b = " + std::to_string(ring.betti(k)));
    if (k <= 2)
      expect("h_k = b_k", k, hp.h[k] == ring.betti(k),
             "h = " + std::to_string(hp.h[k]) + ", b = " + std::to_string(ring.betti(k)));
  }

  for (int k = 0; k <= m; ++k) {
    const int lo = m - k, hi = m + k;
    // L^{k+1} and L^k on Λ^{m-k}.
    QMatrix Lk = QMatrix::identity(basis.size(lo));
    for (int j = 0; j < k; ++j) Lk = o.L(lo + 2 * j) * Lk;
    const QMatrix Lk1 = o.L(lo + 2 * k) * Lk;

    const auto kerL = nullspace_basis(Lk1);
    const auto kerLs = nullspace_basis(o.Ls(lo));
    expect("ker L^{k+1} = ker L*", lo, same_span(basis.size(lo), kerL, kerLs),
           "dim ker L^{k+1} = " + std::to_string(kerL.size()) + ", dim ker L* = " + std::to_string(kerLs.size()));

    const auto& src = hp.harmonic[lo];
    std::vector<Vector> images;
    bool harmonic_images = true;
    for (const auto& v : src) {
      Vector img = Lk * std::span<const Rational>(v);
      harmonic_images = harmonic_images && is_zero_vector(o.d(hi) * std::span<const Rational>(img)) &&
                        is_zero_vector(o.delta(hi) * std::span<const Rational>(img));
      images.push_back(std::move(img));
    }
    const std::size_t img_rank = images.empty() ? 0 : rank(QMatrix::from_columns(basis.size(hi), images));
    expect("L^k: Omega_hr^{m-k} -> Omega_hr^{m+k} bijective", lo,
           harmonic_images && img_rank == src.size() && img_rank == hp.dim_hr[hi],
           "dim source " + std::to_string(src.size()) + ", image rank " + std::to_string(img_rank) +
               ", dim target " + std::to_string(hp.dim_hr[hi]) + (harmonic_images ? "" : ", image not harmonic"));

    std::vector<Vector> img_classes, target_classes;
    for (const auto& v : images) img_classes.push_back(ring.quotient(hi).coordinates(v));
    for (const auto& v : hp.harmonic[hi]) target_classes.push_back(ring.quotient(hi).coordinates(v));
    expect("H_hr^{m+k} = L^k H_hr^{m-k}", hi, same_span(ring.betti(hi), img_classes, target_classes),
           "class spans differ");

    expect("h*_{m-k} = h_{m+k}", lo, hp.h_star[lo] == hp.h[hi],
           "h* = " + std::to_string(hp.h_star[lo]) + ", h = " + std::to_string(hp.h[hi]));
  }
  return rep;
}

IdentityReport identity_suite(const FixedSymplecticForm& f) {
  const OperatorTable ops = build_operators(f);
  const CohomologyRing ring(f.g);
  return identity_suite(f, ops, harmonic_profile(f, ops, ring), ring);
}

ProductStarReport product_star_check(const FixedSymplecticForm& f1, const FixedSymplecticForm& f2) {
  const int n1 = f1.g.dim(), n2 = f2.g.dim();
  const NilpotentLieAlgebra g = direct_sum(f1.g, f2.g);
  const FixedSymplecticForm f = invert_omega(g, f1.omega + f2.omega.shifted(n1));
  const auto& b1 = f1.g.basis();
  const auto& b2 = f2.g.basis();
  const auto& b = g.basis();
  const OperatorTable t1 = build_operators(f1), t2 = build_operators(f2), t = build_operators(f);
  ProductStarReport rep;

  for (int p = 0; p <= n1 && rep.star_ok; ++p)
    for (int q = 0; q <= n2 && rep.star_ok; ++q)
      for (MultiIndex I : b1.degree(p))
        for (MultiIndex J : b2.degree(q)) {
          const QForm a = basis_form(I), c = basis_form(J);
          const QForm lhs = star(t, b, wedge(a, c.shifted(n1)));
          QForm rhs = wedge(star(t1, b1, a), star(t2, b2, c).shifted(n1));
          if ((p * q) % 2) rhs = -rhs;
          if (lhs.to_dense(b) != rhs.to_dense(b)) {
            rep.star_ok = false;
            rep.detail = "star fails on a" + to_string(I) + " x a" + to_string(J);
            break;
          }
        }

  const CohomologyRing r1(f1.g), r2(f2.g), r(g);
  const HarmonicProfile h1 = harmonic_profile(f1, t1, r1), h2 = harmonic_profile(f2, t2, r2),
                        h = harmonic_profile(f, t, r);
  const Ops o{t, b};
  for (int p = 0; p <= n1 && rep.inclusion_ok; ++p)
    for (int q = 0; q <= n2 && rep.inclusion_ok; ++q)
      for (const auto& x : h1.harmonic[p])
        for (const auto& y : h2.harmonic[q]) {
          const QForm xy = wedge(QForm::from_dense(b1, p, x), QForm::from_dense(b2, q, y).shifted(n1));
          const Vector v = xy.is_zero() ? Vector(b.size(p + q)) : xy.to_dense(b);
          if (!is_zero_vector(o.d(p + q) * std::span<const Rational>(v)) ||
              !is_zero_vector(o.delta(p + q) * std::span<const Rational>(v))) {
            rep.inclusion_ok = false;
            rep.detail = "product of harmonic forms not harmonic in degree " + std::to_string(p + q);
            break;
          }
        }

  for (int k = 0; k <= n1 + n2; ++k) {
    std::size_t bound = 0;
    for (int p = 0; p <= std::min(k, n1); ++p)
      if (k - p <= n2) bound += h1.h[p] * h2.h[k - p];
    rep.h_sum.push_back(h.h[k]);
    rep.h_bound.push_back(bound);
    if (bound > h.h[k]) {
      rep.betti_bound_ok = false;
      if (rep.detail.empty()) rep.detail = "sum of h_p h_q exceeds h_" + std::to_string(k);
    }
  }
  return rep;
}

}  // namespace nilflex
