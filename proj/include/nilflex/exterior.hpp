#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nilflex/error.hpp"
#include "nilflex/poly.hpp"
#include "nilflex/rational.hpp"

namespace nilflex {

/// Largest supported dimension (single-digit generator indices).
inline constexpr int kMaxDim = 9;

/// Strictly increasing tuple of generator indices (1-based), stored as a bit
/// set: bit i-1 is set when index i is present.
class MultiIndex {
 public:
  constexpr MultiIndex() = default;
  static constexpr MultiIndex from_bits(std::uint16_t bits) {
    MultiIndex m;
    m.bits_ = bits;
    return m;
  }
  /// Indices must be distinct and in 1..kMaxDim; order is irrelevant.
  static MultiIndex of(std::initializer_list<int> indices);
  static MultiIndex of(std::span<const int> indices);
  static constexpr MultiIndex top(int n) {
    return from_bits(static_cast<std::uint16_t>((1u << n) - 1u));
  }

  constexpr std::uint16_t bits() const { return bits_; }
  constexpr int degree() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> (i - 1)) & 1u; }
  constexpr bool disjoint(MultiIndex o) const { return (bits_ & o.bits_) == 0; }
  std::vector<int> indices() const;

  /// Index set shifted up by `offset` (used for direct sums).
  MultiIndex shifted(int offset) const {
    return from_bits(static_cast<std::uint16_t>(bits_ << offset));
  }

  friend constexpr bool operator==(MultiIndex a, MultiIndex b) { return a.bits_ == b.bits_; }
  /// Lexicographic order on the index tuples within one degree; lower degree first.
  friend bool operator<(MultiIndex a, MultiIndex b);

 private:
  std::uint16_t bits_ = 0;
};

/// Sign of the permutation sorting the concatenation (a, b); 0 if they overlap.
int wedge_sign(MultiIndex a, MultiIndex b);

/// "12", "1346", or "1" for the empty index.
std::string to_string(MultiIndex m);

/// Ordered monomial basis of Λ^k for every k = 0..n.
class ExteriorBasis {
 public:
  explicit ExteriorBasis(int n);

  int dim() const { return n_; }
  const std::vector<MultiIndex>& degree(int k) const { return by_degree_.at(static_cast<std::size_t>(k)); }
  std::size_t size(int k) const {
    return k < 0 || k > n_ ? 0 : by_degree_[static_cast<std::size_t>(k)].size();
  }
  std::size_t position(MultiIndex m) const { return position_[m.bits()]; }

 private:
  int n_;
  std::vector<std::vector<MultiIndex>> by_degree_;
  std::vector<std::size_t> position_;
};

namespace detail {
inline bool coeff_is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool coeff_is_zero(const MultiPoly& x) { return x.is_zero(); }
}  // namespace detail

/// Homogeneous exterior form: MultiIndex -> coefficient, zeros never stored.
template <typename T>
class KForm {
 public:
  using Terms = std::map<MultiIndex, T>;

  KForm() = default;
  explicit KForm(int degree) : degree_(degree) {}
  KForm(int degree, std::initializer_list<std::pair<MultiIndex, T>> terms) : degree_(degree) {
    for (const auto& [m, c] : terms) add(m, c);
  }

  static KForm unit() {
    KForm f(0);
    f.add(MultiIndex{}, T(1));
    return f;
  }

  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  T coefficient(MultiIndex m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? T() : it->second;
  }

  void add(MultiIndex m, const T& c) {
    if (m.degree() != degree_) fail(ErrorKind::Dimension, "index degree does not match form degree");
    if (detail::coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  KForm& operator+=(const KForm& o) {
    check_degree(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    check_degree(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  KForm operator-() const {
    KForm r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend KForm operator*(const T& s, const KForm& f) {
    KForm r(f.degree_);
    for (const auto& [m, c] : f.terms_) r.add(m, s * c);
    return r;
  }
  friend bool operator==(const KForm& a, const KForm& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// Exterior product; overflowing degree gives the zero form of degree
  /// deg a + deg b.
  friend KForm wedge(const KForm& a, const KForm& b) {
    KForm r(a.degree_ + b.degree_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        const int s = wedge_sign(ma, mb);
        if (s == 0) continue;
        T prod = ca * cb;
        if (s < 0) prod = -prod;
        r.add(MultiIndex::from_bits(ma.bits() | mb.bits()), prod);
      }
    return r;
  }

  /// Interior product with the i-th dual basis vector (1-based).
  KForm contract(int i) const {
    KForm r(degree_ - 1);
    for (const auto& [m, c] : terms_) {
      if (!m.contains(i)) continue;
      // Number of indices of m before i decides the sign.
      const int before = std::popcount(static_cast<unsigned>(m.bits() & ((1u << (i - 1)) - 1u)));
      const auto rest = MultiIndex::from_bits(static_cast<std::uint16_t>(m.bits() & ~(1u << (i - 1))));
      r.add(rest, before % 2 ? -c : c);
    }
    return r;
  }

  KForm shifted(int offset) const {
    KForm r(degree_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m.shifted(offset), c);
    return r;
  }

  std::vector<T> to_dense(const ExteriorBasis& basis) const {
    std::vector<T> v(basis.size(degree_));
    for (const auto& [m, c] : terms_) v[basis.position(m)] = c;
    return v;
  }

  static KForm from_dense(const ExteriorBasis& basis, int degree, std::span<const T> v) {
    if (v.size() != basis.size(degree)) fail(ErrorKind::Dimension, "dense form has wrong length");
    KForm f(degree);
    const auto& idx = basis.degree(degree);
    for (std::size_t i = 0; i < v.size(); ++i) f.add(idx[i], v[i]);
    return f;
  }

 private:
  void check_degree(const KForm& o) const {
    if (o.degree_ != degree_) fail(ErrorKind::Dimension, "adding forms of different degree");
  }

  int degree_ = 0;
  Terms terms_;
};

using QForm = KForm<Rational>;
using PolyForm = KForm<MultiPoly>;

/// α_I as a rational form.
inline QForm basis_form(MultiIndex m) {
  QForm f(m.degree());
  f.add(m, Rational(1));
  return f;
}

PolyForm to_poly(const QForm& f, std::size_t nvars);
QForm evaluate(const PolyForm& f, std::span<const Rational> point);

/// "a14 - a25", "3/2 a123", "1" for the unit 0-form, "0" for zero.
std::string to_string(const QForm& f);
std::string to_string(const PolyForm& f, std::span<const std::string> names);

/// Parses the term grammar used for 2-forms in structure strings and catalog
/// bases: "0", "14-25", "16+25-34", with "42" meaning α4∧α2 = -α24. Rational
/// multipliers may prefix a term as in "2*14" or "1/2*36".
QForm parse_form(std::string_view text, int n);

}  // namespace nilflex
