#include "nilflex/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nilflex/sampler.hpp"

namespace nilflex {

RrefResult rref(QMatrix m) {
  RrefResult r;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t p = row;
    while (p < rows && sgn(m(p, col)) == 0) ++p;
    if (p == rows) continue;
    m.swap_rows(row, p);
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < cols; ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || sgn(m(i, col)) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < cols; ++j)
        if (sgn(m(row, j)) != 0) m(i, j) -= f * m(row, j);
    }
    r.pivots.push_back(col);
    ++row;
  }
  r.rank = row;
  r.reduced = std::move(m);
  return r;
}

std::size_t rank(const QMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Eliminate along the shorter side.
  return m.rows() < m.cols() ? rref(m.transpose()).rank : rref(m).rank;
}

std::vector<Vector> nullspace_basis(const QMatrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::size_t> independent_columns(const QMatrix& m) {
  if (m.cols() == 0) return {};
  return rref(m).pivots;
}

QMatrix inverse(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) fail(ErrorKind::Dimension, "inverse of a non-square matrix");
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  RrefResult r = rref(std::move(aug));
  if (r.rank < n || (n > 0 && r.pivots[n - 1] != n - 1))
    fail(ErrorKind::Degenerate, "matrix is singular");
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

Rational determinant(QMatrix m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) fail(ErrorKind::Dimension, "determinant of a non-square matrix");
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

namespace {

QMatrix columns_of(std::size_t ambient, std::span<const Vector> a, std::span<const Vector> b = {}) {
  QMatrix m(ambient, a.size() + b.size());
  std::size_t j = 0;
  for (const auto* fam : {&a, &b}) {
    for (const auto& v : *fam) {
      if (v.size() != ambient) fail(ErrorKind::Dimension, "vector length mismatch");
      for (std::size_t i = 0; i < ambient; ++i) m(i, j) = v[i];
      ++j;
    }
  }
  return m;
}

}  // namespace

std::size_t intersection_dim(std::size_t ambient, std::span<const Vector> a, std::span<const Vector> b) {
  const std::size_t ra = rank(columns_of(ambient, a));
  const std::size_t rb = rank(columns_of(ambient, b));
  const std::size_t rab = rank(columns_of(ambient, a, b));
  return ra + rb - rab;
}

bool same_span(std::size_t ambient, std::span<const Vector> a, std::span<const Vector> b) {
  const std::size_t ra = rank(columns_of(ambient, a));
  return ra == rank(columns_of(ambient, b)) && ra == rank(columns_of(ambient, a, b));
}

QuotientMap::QuotientMap(std::size_t ambient, std::span<const Vector> z_basis,
                         std::span<const Vector> b_basis)
    : ambient_(ambient) {
  const QMatrix bz = columns_of(ambient, b_basis, z_basis);
  for (auto c : independent_columns(bz))
    if (c >= b_basis.size()) reps_.push_back(z_basis[c - b_basis.size()]);
  build(b_basis);
}

QuotientMap QuotientMap::with_representatives(std::size_t ambient, std::span<const Vector> z_basis,
                                              std::span<const Vector> b_basis,
                                              std::span<const Vector> representatives) {
  const std::size_t rz = rank(columns_of(ambient, z_basis));
  const std::size_t rb = rank(columns_of(ambient, b_basis));
  if (rank(columns_of(ambient, z_basis, representatives)) != rz)
    fail(ErrorKind::NotCocycle, "a supplied representative is not a cocycle");
  if (representatives.size() != rz - rb ||
      rank(columns_of(ambient, b_basis, representatives)) != rz)
    fail(ErrorKind::InvalidArgument, "supplied representatives are not a basis of the quotient");
  QuotientMap q;
  q.ambient_ = ambient;
  q.reps_.assign(representatives.begin(), representatives.end());
  q.build(b_basis);
  return q;
}

void QuotientMap::build(std::span<const Vector> b_basis) {
  // Square basis [B_indep | reps | standard complement]; its inverse splits
  // every vector into boundary, class and obstruction coordinates.
  std::vector<Vector> basis;
  const QMatrix bm = columns_of(ambient_, b_basis);
  for (auto c : independent_columns(bm)) basis.push_back(b_basis[c]);
  const std::size_t nb = basis.size();
  for (const auto& r : reps_) basis.push_back(r);
  const std::size_t nz = basis.size();
  for (std::size_t i = 0; i < ambient_; ++i) {
    Vector e(ambient_);
    e[i] = 1;
    basis.push_back(std::move(e));
  }
  QMatrix all = columns_of(ambient_, basis);
  std::vector<Vector> square;
  for (auto c : independent_columns(all)) square.push_back(basis[c]);
  const QMatrix inv = inverse(columns_of(ambient_, square));
  projector_ = QMatrix(reps_.size(), ambient_);
  for (std::size_t i = 0; i < reps_.size(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) projector_(i, j) = inv(nb + i, j);
  obstruction_ = QMatrix(ambient_ - nz, ambient_);
  for (std::size_t i = nz; i < ambient_; ++i)
    for (std::size_t j = 0; j < ambient_; ++j) obstruction_(i - nz, j) = inv(i, j);
}

Vector QuotientMap::coordinates(std::span<const Rational> z) const {
  if (z.size() != ambient_) fail(ErrorKind::Dimension, "vector length mismatch");
  for (const Rational& x : obstruction_ * z)
    if (sgn(x) != 0) fail(ErrorKind::NotCocycle, "vector is not a cocycle");
  return projector_ * z;
}

std::vector<MultiPoly> QuotientMap::coordinates(std::span<const MultiPoly> z) const {
  if (z.size() != ambient_) fail(ErrorKind::Dimension, "vector length mismatch");
  std::vector<MultiPoly> out(projector_.rows());
  for (std::size_t i = 0; i < projector_.rows(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j)
      if (sgn(projector_(i, j)) != 0 && !z[j].is_zero()) out[i] += projector_(i, j) * z[j];
  return out;
}

Vector quotient_coordinates(std::span<const Rational> z, std::span<const Vector> z_basis,
                            std::span<const Vector> b_basis) {
  return QuotientMap(z.size(), z_basis, b_basis).coordinates(z);
}

QMatrix evaluate(const PolyMatrix& m, std::span<const Rational> point) {
  QMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).eval(point);
  return r;
}

PolyMatrix substitute(const PolyMatrix& m, std::span<const Substitution> subs) {
  const auto resolved = resolve_substitutions(subs);
  PolyMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      MultiPoly p = m(i, j);
      for (const auto& s : resolved) p = p.substitute(s.var, s.value);
      r(i, j) = std::move(p);
    }
  return r;
}

MultiPoly determinant(PolyMatrix m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) fail(ErrorKind::Dimension, "determinant of a non-square matrix");
  if (n == 0) return MultiPoly(1);
  MultiPoly prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) return MultiPoly(0);
    if (p != k) {
      m.swap_rows(p, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = divide_exact(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
      m(i, k) = MultiPoly(0);
    }
    prev = m(k, k);
  }
  MultiPoly det = m(n - 1, n - 1);
  return negate ? -det : det;
}

PolyMatrix to_poly(const QMatrix& m, std::size_t nvars) {
  PolyMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = MultiPoly::constant(nvars, m(i, j));
  return r;
}

std::optional<MinorWitness> minor_nonzero_witness(const PolyMatrix& m, std::size_t r,
                                                  std::uint64_t seed, int attempts) {
  if (r > std::min(m.rows(), m.cols()))
    fail(ErrorKind::InvalidArgument, "minor order exceeds matrix size");
  if (r == 0) return MinorWitness{{}, {}, MultiPoly(1)};
  std::size_t nvars = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) nvars = std::max(nvars, m(i, j).nvars());
  Sampler rng(seed);
  for (int a = 0; a < attempts; ++a) {
    Vector point(nvars);
    for (auto& x : point) x = rng.uniform(-10, 10);
    const QMatrix q = evaluate(m, point);
    // Independent columns of q, then independent rows within those columns.
    auto cols = independent_columns(q);
    if (cols.size() < r) continue;
    cols.resize(r);
    std::vector<std::size_t> all_rows(m.rows());
    std::iota(all_rows.begin(), all_rows.end(), 0);
    auto rows = independent_columns(q.submatrix(all_rows, cols).transpose());
    rows.resize(r);
    MultiPoly det = determinant(m.submatrix(rows, cols));
    if (!det.is_zero()) return MinorWitness{std::move(rows), std::move(cols), std::move(det)};
  }
  return std::nullopt;
}

std::string to_string(const QMatrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).get_str();
    os << "]\n";
  }
  return os.str();
}

}  // namespace nilflex
