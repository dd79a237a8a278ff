#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <type_traits>
#include <string>
#include <vector>

#include "nilflex/error.hpp"
#include "nilflex/poly.hpp"
#include "nilflex/rational.hpp"

namespace nilflex {

using Vector = std::vector<Rational>;

/// Dense row-major matrix; entries are Rational or MultiPoly.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  /// Builds a matrix whose columns are the given vectors (all of length rows).
  static Matrix from_columns(std::size_t rows, std::span<const std::vector<T>> columns) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) fail(ErrorKind::Dimension, "column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    Matrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!nilflex_is_zero(x)) return false;
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::Dimension, "matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (nilflex_is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!nilflex_is_zero(b(k, j))) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  std::vector<T> operator*(std::span<const T> v) const {
    if (v.size() != cols_) fail(ErrorKind::Dimension, "matrix-vector shape mismatch");
    std::vector<T> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!nilflex_is_zero(v[j])) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  static bool nilflex_is_zero(const T& x) {
    if constexpr (std::is_same_v<T, MultiPoly>) return x.is_zero();
    else return sgn(x) == 0;
  }

  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::Dimension, "matrix shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<MultiPoly>;

struct RrefResult {
  QMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Exact reduced row-echelon form by Gauss-Jordan elimination.
RrefResult rref(QMatrix m);

std::size_t rank(const QMatrix& m);

/// Basis of ker m, one vector per free column (free variable set to 1).
std::vector<Vector> nullspace_basis(const QMatrix& m);

/// Maximal independent subset of the columns, as column indices (first wins).
std::vector<std::size_t> independent_columns(const QMatrix& m);

/// Throws Degenerate when m is singular.
QMatrix inverse(const QMatrix& m);

Rational determinant(QMatrix m);

/// Dimension of span(a) ∩ span(b) for column-vector families in the same space.
std::size_t intersection_dim(std::size_t ambient, std::span<const Vector> a, std::span<const Vector> b);

/// True when span(a) == span(b).
bool same_span(std::size_t ambient, std::span<const Vector> a, std::span<const Vector> b);

/// Linear map from a subspace Z onto coordinates of Z / B.
///
/// Given bases of Z and of a subspace B ⊂ Z, a complement basis of Z mod B is
/// chosen from Z_basis (first independent vectors after B), and the map sends
/// a vector of Z to its coefficients on that complement. Boundaries go to 0.
class QuotientMap {
 public:
  QuotientMap() = default;
  QuotientMap(std::size_t ambient, std::span<const Vector> z_basis, std::span<const Vector> b_basis);
  /// Uses the given representatives as the quotient basis instead of choosing
  /// them. They must be independent modulo B and span Z together with B.
  static QuotientMap with_representatives(std::size_t ambient, std::span<const Vector> z_basis,
                                          std::span<const Vector> b_basis,
                                          std::span<const Vector> representatives);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return reps_.size(); }
  const std::vector<Vector>& representatives() const { return reps_; }

  /// Throws NotCocycle if z is not in span(Z).
  Vector coordinates(std::span<const Rational> z) const;
  /// Coordinates of a polynomial-valued cocycle (assumed to lie in Z).
  std::vector<MultiPoly> coordinates(std::span<const MultiPoly> z) const;
  /// Row i gives the i-th coordinate functional on Z.
  const QMatrix& projector() const { return projector_; }

 private:
  void build(std::span<const Vector> b_basis);

  std::size_t ambient_ = 0;
  std::vector<Vector> reps_;
  QMatrix projector_;   // dim x ambient
  QMatrix obstruction_; // rows vanish exactly on span(Z)
};

/// Coordinates of the class of z in Z/B (see QuotientMap).
Vector quotient_coordinates(std::span<const Rational> z, std::span<const Vector> z_basis,
                            std::span<const Vector> b_basis);

QMatrix evaluate(const PolyMatrix& m, std::span<const Rational> point);

PolyMatrix substitute(const PolyMatrix& m, std::span<const Substitution> subs);

/// Symbolic determinant by fraction-free (Bareiss) elimination over Q[x].
MultiPoly determinant(PolyMatrix m);

/// An r x r submatrix with a symbolically nonzero determinant.
struct MinorWitness {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  MultiPoly determinant;
};

/// Searches for an r x r minor that is not identically zero. Candidate rows
/// and columns are screened by exact evaluation at pseudo-random integer points
/// (deterministic in `seed`), and the determinant of the chosen minor is then
/// computed symbolically.
std::optional<MinorWitness> minor_nonzero_witness(const PolyMatrix& m, std::size_t r,
                                                  std::uint64_t seed = 1, int attempts = 16);

PolyMatrix to_poly(const QMatrix& m, std::size_t nvars = 0);

std::string to_string(const QMatrix& m);

}  // namespace nilflex
