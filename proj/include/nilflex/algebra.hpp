#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nilflex/exterior.hpp"
#include "nilflex/matrix.hpp"

namespace nilflex {

/// Parsed structure string such as "(0,0,12,13,23,14-25)".
///
/// Entry k holds dα_k as a 2-form in normalized form (increasing index
/// pairs with signs, so "42" reads as -α24). Every index appearing in entry k
/// is smaller than k.
struct AlgebraSpec {
  std::vector<QForm> entries;

  int dim() const { return static_cast<int>(entries.size()); }
};

/// Grammar:  spec := "(" entry ("," entry)* ")" ; entry := "0" | term (("+"|"-") term)* ;
/// term := digit digit. Whitespace is ignored. Errors carry the character position.
AlgebraSpec parse_spec(std::string_view text);

/// Normalized structure string; parse_spec(to_string(s)) == s.
std::string to_string(const AlgebraSpec& spec);

/// Nilpotent Lie algebra given through the Chevalley–Eilenberg differential on
/// the dual basis α_1..α_n, extended to Λ*g* as an antiderivation.
class NilpotentLieAlgebra {
 public:
  /// Validates d∘d = 0 on generators (Jacobi), nilpotency, and vanishing of
  /// top-degree boundaries.
  static NilpotentLieAlgebra build(const AlgebraSpec& spec);
  static NilpotentLieAlgebra parse(std::string_view text) { return build(parse_spec(text)); }

  int dim() const { return n_; }
  const AlgebraSpec& spec() const { return spec_; }
  const ExteriorBasis& basis() const { return *basis_; }

  /// dα_k for k in 1..n.
  const QForm& d_generator(int k) const { return spec_.entries.at(static_cast<std::size_t>(k - 1)); }
  /// Structure constant c^{ij}_k: coefficient of α_ij (i<j) in dα_k.
  Rational structure_constant(int i, int j, int k) const;

  /// d(α_I) for a basis monomial.
  const QForm& d_monomial(MultiIndex m) const { return d_monomial_[m.bits()]; }

  template <typename T>
  KForm<T> d(const KForm<T>& f) const {
    KForm<T> r(f.degree() + 1);
    for (const auto& [m, c] : f.terms())
      for (const auto& [dm, dc] : d_monomial(m).terms()) r.add(dm, c * dc);
    return r;
  }

  /// Matrix of d: Λ^k -> Λ^{k+1} in the ordered monomial bases.
  const QMatrix& differential_matrix(int k) const;

  /// Length s of the lower central series g = g^1 ⊋ g^2 ⊋ ... ⊋ g^{s+1} = 0.
  int step_length() const { return step_; }

 private:
  int n_ = 0;
  AlgebraSpec spec_;
  std::shared_ptr<const ExteriorBasis> basis_;
  std::vector<QForm> d_monomial_;
  std::vector<QMatrix> d_matrix_;
  int step_ = 0;
};

/// Block sum g1 ⊕ g2 with the generators of g2 renumbered after those of g1.
NilpotentLieAlgebra direct_sum(const NilpotentLieAlgebra& g1, const NilpotentLieAlgebra& g2);

/// Lower central series length; throws NotNilpotent if it stalls above zero.
int step_length(const NilpotentLieAlgebra& g);

}  // namespace nilflex
