#include "nilflex/algebra.hpp"

#include <algorithm>
#include <cctype>

namespace nilflex {

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  AlgebraSpec parse() {
    expect('(');
    std::vector<std::vector<Term>> raw;
    raw.push_back(entry());
    while (peek() == ',') {
      ++pos_;
      raw.push_back(entry());
    }
    expect(')');
    if (peek() != '\0') error("trailing characters");
    const int n = static_cast<int>(raw.size());
    if (n > kMaxDim) fail(ErrorKind::Dimension, "dimension " + std::to_string(n) + " exceeds 9");
    AlgebraSpec spec;
    for (int k = 1; k <= n; ++k) {
      QForm f(2);
      for (const Term& t : raw[static_cast<std::size_t>(k - 1)]) {
        for (int i : {t.i, t.j}) {
          if (i < 1 || i > n)
            fail(ErrorKind::Parse, "index " + std::to_string(i) + " out of range 1.." +
                                       std::to_string(n) + " at position " + std::to_string(t.pos));
          if (i >= k)
            fail(ErrorKind::Parse, "index " + std::to_string(i) + " not below entry position " +
                                       std::to_string(k) + " at position " + std::to_string(t.pos));
        }
        // α_i ∧ α_j with i > j is -α_ji.
        const int sign = t.i < t.j ? t.sign : -t.sign;
        f.add(MultiIndex::of({t.i, t.j}), Rational(sign));
      }
      spec.entries.push_back(std::move(f));
    }
    return spec;
  }

 private:
  struct Term {
    int i, j, sign;
    std::size_t pos;
  };

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::Parse, msg + " at position " + std::to_string(pos_) + " in '" +
                               std::string(text_) + "'");
  }

  char peek() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  int digit() {
    char c = peek();
    if (!std::isdigit(static_cast<unsigned char>(c))) error("expected a digit");
    ++pos_;
    return c - '0';
  }

  std::vector<Term> entry() {
    std::vector<Term> terms;
    const std::size_t start = (peek(), pos_);
    if (peek() == '0') {
      // "0" alone, as opposed to a pair starting with 0 (which is invalid anyway).
      std::size_t save = pos_;
      ++pos_;
      char next = peek();
      if (next == ',' || next == ')') return terms;
      pos_ = save;
    }
    int sign = 1;
    for (;;) {
      std::size_t at = (peek(), pos_);
      int i = digit();
      int j = digit();
      if (i == j) {
        pos_ = at;
        error("repeated index in pair");
      }
      terms.push_back({i, j, sign, at});
      char c = peek();
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++pos_;
        continue;
      }
      break;
    }
    if (terms.empty()) {
      pos_ = start;
      error("empty entry");
    }
    return terms;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string entry_string(const QForm& f) {
  if (f.is_zero()) return "0";
  // Expand multiplicities so the string stays inside the grammar.
  std::vector<std::pair<std::string, bool>> pieces;  // (pair digits, negative)
  for (const auto& [m, c] : f.terms()) {
    Rational a = abs(c);
    if (a.get_den() != 1) fail(ErrorKind::InvalidArgument, "non-integral structure constant");
    const auto idx = m.indices();
    std::string pair = std::to_string(idx[0]) + std::to_string(idx[1]);
    for (Integer r = a.get_num(); r > 0; --r) pieces.emplace_back(pair, sgn(c) < 0);
  }
  std::string s;
  if (pieces.front().second) {
    // Lead with a positive term if any; otherwise flip the first pair.
    auto it = std::find_if(pieces.begin(), pieces.end(), [](const auto& p) { return !p.second; });
    if (it != pieces.end()) {
      std::rotate(pieces.begin(), it, it + 1);
    } else {
      std::swap(pieces.front().first[0], pieces.front().first[1]);
      pieces.front().second = false;
    }
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i) s += pieces[i].second ? '-' : '+';
    s += pieces[i].first;
  }
  return s;
}

}  // namespace

AlgebraSpec parse_spec(std::string_view text) { return SpecParser(text).parse(); }

std::string to_string(const AlgebraSpec& spec) {
  std::string s = "(";
  for (std::size_t k = 0; k < spec.entries.size(); ++k) {
    if (k) s += ',';
    s += entry_string(spec.entries[k]);
  }
  return s + ")";
}

namespace {

// Span of a family of vectors, as an independent subset.
std::vector<Vector> span_basis(std::size_t n, const std::vector<Vector>& vs) {
  if (vs.empty()) return {};
  QMatrix m(n, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = vs[j][i];
  std::vector<Vector> out;
  for (auto c : independent_columns(m)) out.push_back(vs[c]);
  return out;
}

int lower_central_length(const NilpotentLieAlgebra& g) {
  const int n = g.dim();
  const auto un = static_cast<std::size_t>(n);
  // [e_i, e_j] = sum_k c^{ij}_k e_k up to an overall sign, irrelevant for spans.
  auto bracket = [&](int i, const Vector& v) {
    Vector r(un);
    for (int j = 1; j <= n; ++j) {
      const Rational& vj = v[static_cast<std::size_t>(j - 1)];
      if (sgn(vj) == 0 || i == j) continue;
      const int s = i < j ? 1 : -1;
      const int a = std::min(i, j), b = std::max(i, j);
      for (int k = 1; k <= n; ++k) {
        Rational c = g.structure_constant(a, b, k);
        if (sgn(c) != 0) r[static_cast<std::size_t>(k - 1)] += s * c * vj;
      }
    }
    return r;
  };
  std::vector<Vector> current;
  for (int i = 0; i < n; ++i) {
    Vector e(un);
    e[static_cast<std::size_t>(i)] = 1;
    current.push_back(std::move(e));
  }
  int s = 0;
  while (!current.empty()) {
    std::vector<Vector> next;
    for (int i = 1; i <= n; ++i)
      for (const auto& v : current) next.push_back(bracket(i, v));
    next = span_basis(un, next);
    if (next.size() == current.size())
      fail(ErrorKind::NotNilpotent, "lower central series stabilizes at dimension " +
                                         std::to_string(next.size()));
    current = std::move(next);
    ++s;
  }
  return s;
}

}  // namespace

Rational NilpotentLieAlgebra::structure_constant(int i, int j, int k) const {
  if (i > j) return -structure_constant(j, i, k);
  if (i == j) return 0;
  return d_generator(k).coefficient(MultiIndex::of({i, j}));
}

const QMatrix& NilpotentLieAlgebra::differential_matrix(int k) const {
  if (k < 0 || k > n_) fail(ErrorKind::InvalidArgument, "degree out of range");
  return d_matrix_[static_cast<std::size_t>(k)];
}

NilpotentLieAlgebra NilpotentLieAlgebra::build(const AlgebraSpec& spec) {
  NilpotentLieAlgebra g;
  g.n_ = spec.dim();
  if (g.n_ < 1 || g.n_ > kMaxDim) fail(ErrorKind::Dimension, "dimension must be in 1..9");
  for (const auto& e : spec.entries)
    if (e.degree() != 2 && !e.is_zero()) fail(ErrorKind::InvalidArgument, "entries must be 2-forms");
  g.spec_ = spec;
  for (auto& e : g.spec_.entries)
    if (e.is_zero()) e = QForm(2);
  g.basis_ = std::make_shared<const ExteriorBasis>(g.n_);
  const int n = g.n_;

  // d on monomials by the antiderivation rule, by increasing degree:
  // d(α_i ∧ α_R) = dα_i ∧ α_R - α_i ∧ d(α_R), with i the smallest index.
  g.d_monomial_.assign(std::size_t{1} << n, QForm());
  g.d_monomial_[0] = QForm(1);
  for (int k = 1; k <= n; ++k) {
    for (MultiIndex m : g.basis_->degree(k)) {
      const int i = m.indices().front();
      const auto head = MultiIndex::of({i});
      const auto rest = MultiIndex::from_bits(static_cast<std::uint16_t>(m.bits() & ~head.bits()));
      QForm r = wedge(g.d_generator(i), basis_form(rest));
      r -= wedge(basis_form(head), g.d_monomial_[rest.bits()]);
      g.d_monomial_[m.bits()] = std::move(r);
    }
  }

  for (int k = 1; k <= n; ++k) {
    const QForm dd = g.d(g.d_generator(k));
    if (!dd.is_zero())
      fail(ErrorKind::Jacobi, "Jacobi violation: d^2 a" + std::to_string(k) + " = " + to_string(dd) +
                                  " != 0");
  }

  for (int k = 0; k <= n; ++k) {
    const auto& src = g.basis_->degree(k);
    QMatrix dm(g.basis_->size(k + 1), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
      for (const auto& [t, c] : g.d_monomial_[src[j].bits()].terms()) dm(g.basis_->position(t), j) = c;
    g.d_matrix_.push_back(std::move(dm));
  }

  // Every (n-1)-form must be closed in top degree (unimodularity).
  if (!g.d_matrix_[static_cast<std::size_t>(n - 1)].is_zero())
    fail(ErrorKind::NotNilpotent, "top-degree boundaries do not vanish (not unimodular)");

  g.step_ = lower_central_length(g);
  return g;
}

int step_length(const NilpotentLieAlgebra& g) { return g.step_length(); }

NilpotentLieAlgebra direct_sum(const NilpotentLieAlgebra& g1, const NilpotentLieAlgebra& g2) {
  const int n1 = g1.dim(), n2 = g2.dim();
  if (n1 + n2 > kMaxDim)
    fail(ErrorKind::Dimension, "direct sum dimension " + std::to_string(n1 + n2) + " exceeds 9");
  AlgebraSpec spec;
  for (int k = 1; k <= n1; ++k) spec.entries.push_back(g1.d_generator(k));
  for (int k = 1; k <= n2; ++k) spec.entries.push_back(g2.d_generator(k).shifted(n1));
  return NilpotentLieAlgebra::build(spec);
}

}  // namespace nilflex
