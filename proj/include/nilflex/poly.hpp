#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nilflex/rational.hpp"

namespace nilflex {

/// Exponent vector of a monomial. Trailing zero exponents are significant only
/// up to the owning polynomial's variable count.
using Monomial = std::vector<std::uint8_t>;

/// Graded lexicographic order, first variable most significant.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over the rationals.
///
/// Variables are positional (0 = A, 1 = B, ...); names live with whoever owns
/// the parameter space and are only needed for parsing and printing. A
/// polynomial with zero variables is a constant and combines with any other.
/// No zero coefficient is ever stored.
class MultiPoly {
 public:
  using Terms = std::map<Monomial, Rational, GrlexLess>;

  MultiPoly() = default;
  MultiPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  MultiPoly(int c) : MultiPoly(Rational(c)) {}  // NOLINT

  static MultiPoly variable(std::size_t nvars, std::size_t index);
  static MultiPoly constant(std::size_t nvars, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero if absent).
  Rational constant_term() const;
  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(std::size_t var) const;
  bool is_homogeneous() const;
  /// Largest term under grlex; precondition !is_zero().
  const Terms::value_type& leading() const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  MultiPoly operator-() const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(unsigned e) const;

  /// Exact evaluation. Throws InvalidArgument if point.size() < nvars().
  Rational eval(std::span<const Rational> point) const;

  /// Replaces variable `var` by `value` everywhere.
  MultiPoly substitute(std::size_t var, const MultiPoly& value) const;

  /// Splits p = sum_e c_e * x_var^e; returns c_0..c_deg.
  std::vector<MultiPoly> coefficients_in(std::size_t var) const;

  /// Exact quotient a / b. Throws InvalidArgument when b does not divide a.
  friend MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b);

  /// Pads the variable count (used when mixing constants with a ring).
  MultiPoly widened(std::size_t nvars) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  void align(std::size_t nvars);

  std::size_t nvars_ = 0;
  Terms terms_;
};

/// True when a = c*b for some nonzero rational c (both nonzero).
bool proportional(const MultiPoly& a, const MultiPoly& b);

/// Scales so that the leading coefficient is 1 (zero stays zero).
MultiPoly monic(const MultiPoly& p);

/// Names "A".."Z" for the first n parameters.
std::vector<std::string> default_variable_names(std::size_t n);

std::string to_string(const MultiPoly& p, std::span<const std::string> names);

/// Parses expressions such as "ACD-B(C^2+D^2)" or "3*A*B - 1/2 E".
/// Variables are single letters taken from `names`; juxtaposition multiplies.
MultiPoly parse_poly(std::string_view text, std::span<const std::string> names);

/// An affine substitution x_var := value used to describe rank strata.
struct Substitution {
  std::size_t var;
  MultiPoly value;
};

/// Applies substitutions in dependency order. A variable whose value refers
/// (directly or through other substitutions) to itself is rejected.
MultiPoly substitute_all(const MultiPoly& p, std::span<const Substitution> subs);

/// Resolves a substitution list to closed form (no substituted variable
/// appears on any right-hand side). Throws InvalidArgument on cycles.
std::vector<Substitution> resolve_substitutions(std::span<const Substitution> subs);

}  // namespace nilflex
