#include "nilflex/poly.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

#include "nilflex/error.hpp"

namespace nilflex {

namespace {

int degree_of(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), 0);
}

}  // namespace

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const int da = degree_of(a), db = degree_of(b);
  if (da != db) return da < db;
  // Larger exponent in an earlier variable ranks higher.
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly::MultiPoly(const Rational& c) {
  if (!nilflex::is_zero(c)) terms_.emplace(Monomial{}, c);
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) fail(ErrorKind::InvalidArgument, "variable index out of range");
  MultiPoly p;
  p.nvars_ = nvars;
  Monomial m(nvars, 0);
  m[index] = 1;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
  return MultiPoly(c).widened(nvars);
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

Rational MultiPoly::constant_term() const {
  if (terms_.empty()) return 0;
  const auto& [m, c] = *terms_.begin();
  return degree_of(m) == 0 ? c : Rational(0);
}

int MultiPoly::total_degree() const {
  return terms_.empty() ? -1 : degree_of(terms_.rbegin()->first);
}

int MultiPoly::degree_in(std::size_t var) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [m, c] : terms_)
    if (var < m.size()) d = std::max<int>(d, m[var]);
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = total_degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return degree_of(t.first) == d; });
}

const MultiPoly::Terms::value_type& MultiPoly::leading() const {
  if (terms_.empty()) fail(ErrorKind::InvalidArgument, "leading term of zero polynomial");
  return *terms_.rbegin();
}

MultiPoly MultiPoly::widened(std::size_t nvars) const {
  if (nvars < nvars_) fail(ErrorKind::InvalidArgument, "cannot narrow a polynomial");
  if (nvars == nvars_) return *this;
  MultiPoly r;
  r.nvars_ = nvars;
  for (const auto& [m, c] : terms_) {
    Monomial w = m;
    w.resize(nvars, 0);
    r.terms_.emplace(std::move(w), c);
  }
  return r;
}

void MultiPoly::align(std::size_t nvars) {
  if (nvars > nvars_) *this = widened(nvars);
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (nilflex::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (nilflex::is_zero(it->second)) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.nvars_ > nvars_) align(o.nvars_);
  const MultiPoly& src = o.nvars_ == nvars_ ? o : o.widened(nvars_);
  for (const auto& [m, c] : src.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.nvars_ > nvars_) align(o.nvars_);
  const MultiPoly& src = o.nvars_ == nvars_ ? o : o.widened(nvars_);
  for (const auto& [m, c] : src.terms_) add_term(m, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  const std::size_t n = std::max(a.nvars_, b.nvars_);
  MultiPoly r;
  r.nvars_ = n;
  if (a.is_zero() || b.is_zero()) return r;
  const MultiPoly& aa = a.nvars_ == n ? a : a.widened(n);
  const MultiPoly& bb = b.nvars_ == n ? b : b.widened(n);
  Monomial prod(n);
  for (const auto& [ma, ca] : aa.terms_) {
    for (const auto& [mb, cb] : bb.terms_) {
      for (std::size_t i = 0; i < n; ++i) prod[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
      r.add_term(prod, ca * cb);
    }
  }
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (nilflex::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ == b.nvars_) return a.terms_ == b.terms_;
  const std::size_t n = std::max(a.nvars_, b.nvars_);
  return a.widened(n).terms_ == b.widened(n).terms_;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = MultiPoly::constant(nvars_, 1);
  MultiPoly base = *this;
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

Rational MultiPoly::eval(std::span<const Rational> point) const {
  if (point.size() < nvars_)
    fail(ErrorKind::InvalidArgument, "evaluation point assigns " + std::to_string(point.size()) +
                                         " of " + std::to_string(nvars_) + " variables");
  Rational sum = 0;
  Rational term;
  for (const auto& [m, c] : terms_) {
    term = c;
    for (std::size_t i = 0; i < m.size() && sgn(term) != 0; ++i) {
      for (std::uint8_t k = 0; k < m[i]; ++k) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

MultiPoly MultiPoly::substitute(std::size_t var, const MultiPoly& value) const {
  const std::size_t n = std::max(nvars_, value.nvars_);
  if (var >= n) return *this;
  const int deg = degree_in(var);
  if (deg <= 0) return *this;
  std::vector<MultiPoly> powers{MultiPoly::constant(n, 1)};
  for (int e = 1; e <= deg; ++e) powers.push_back(powers.back() * value);
  MultiPoly r;
  r.nvars_ = n;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    rest.resize(n, 0);
    const int e = rest[var];
    rest[var] = 0;
    MultiPoly t;
    t.nvars_ = n;
    t.terms_.emplace(std::move(rest), c);
    r += e == 0 ? t : t * powers[static_cast<std::size_t>(e)];
  }
  return r;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
  const int deg = std::max(degree_in(var), 0);
  std::vector<MultiPoly> out(static_cast<std::size_t>(deg) + 1, MultiPoly::constant(nvars_, 0));
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    int e = 0;
    if (var < rest.size()) {
      e = rest[var];
      rest[var] = 0;
    }
    out[static_cast<std::size_t>(e)].add_term(rest, c);
  }
  return out;
}

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) fail(ErrorKind::InvalidArgument, "division by the zero polynomial");
  const std::size_t n = std::max(a.nvars_, b.nvars_);
  MultiPoly rem = a.widened(n);
  const MultiPoly div = b.widened(n);
  const auto& [lm, lc] = div.leading();
  MultiPoly q;
  q.nvars_ = n;
  Monomial qm(n);
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.leading();
    for (std::size_t i = 0; i < n; ++i) {
      if (rm[i] < lm[i]) fail(ErrorKind::InvalidArgument, "polynomial division is not exact");
      qm[i] = static_cast<std::uint8_t>(rm[i] - lm[i]);
    }
    MultiPoly t;
    t.nvars_ = n;
    t.terms_.emplace(qm, rc / lc);
    q += t;
    rem -= t * div;
  }
  return q;
}

bool proportional(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return false;
  return monic(a) == monic(b);
}

MultiPoly monic(const MultiPoly& p) {
  if (p.is_zero()) return p;
  Rational inv = 1 / p.leading().second;
  return p * inv;
}

std::vector<std::string> default_variable_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.emplace_back(1, static_cast<char>('A' + i));
  return names;
}

std::string to_string(const MultiPoly& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const bool constant = degree_of(m) == 0;
    Rational mag = abs(c);
    if (sgn(c) < 0) os << (first ? "-" : " - ");
    else if (!first) os << " + ";
    first = false;
    const bool unit = mag == 1;
    if (constant || !unit) os << mag.get_str();
    bool need_sep = !constant && !unit;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (need_sep) os << '*';
      os << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (m[i] > 1) os << '^' << int(m[i]);
      need_sep = true;
    }
  }
  return os.str();
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::span<const std::string> names)
      : text_(text), names_(names) {}

  MultiPoly parse() {
    MultiPoly r = expr();
    skip();
    if (pos_ != text_.size()) error("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::Parse, msg + " at position " + std::to_string(pos_) + " in '" +
                               std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  MultiPoly expr() {
    MultiPoly r = MultiPoly::constant(names_.size(), 0);
    bool first = true;
    for (;;) {
      char c = peek();
      int sign = 1;
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      MultiPoly t = term();
      if (sign < 0) r -= t;
      else r += t;
      first = false;
    }
    return r;
  }

  bool starts_factor(char c) const {
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
           std::isalpha(static_cast<unsigned char>(c));
  }

  MultiPoly term() {
    MultiPoly r = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        r *= factor();
      } else if (starts_factor(c)) {
        r *= factor();
      } else {
        break;
      }
    }
    return r;
  }

  unsigned integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected integer");
    return static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
  }

  MultiPoly factor() {
    MultiPoly base = primary();
    if (peek() == '^') {
      ++pos_;
      base = base.pow(integer());
    }
    return base;
  }

  MultiPoly primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      MultiPoly r = expr();
      if (peek() != ')') error("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string lit(text_.substr(start, pos_ - start));
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::size_t ds = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (ds == pos_) error("expected denominator");
        lit += "/" + std::string(text_.substr(ds, pos_ - ds));
      }
      return MultiPoly::constant(names_.size(), parse_rational(lit));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name(1, c);
      auto it = std::find(names_.begin(), names_.end(), name);
      if (it == names_.end()) error("unknown variable '" + name + "'");
      ++pos_;
      return MultiPoly::variable(names_.size(), static_cast<std::size_t>(it - names_.begin()));
    }
    error("expected a factor");
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, std::span<const std::string> names) {
  return PolyParser(text, names).parse();
}

std::vector<Substitution> resolve_substitutions(std::span<const Substitution> subs) {
  std::vector<Substitution> out(subs.begin(), subs.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (out[i].var == out[j].var)
        fail(ErrorKind::InvalidArgument, "variable substituted twice");
  // Repeatedly eliminate substituted variables from right-hand sides; a cycle
  // shows up as a variable that appears in its own value.
  for (std::size_t round = 0; round <= out.size(); ++round) {
    bool changed = false;
    for (auto& s : out) {
      if (s.value.degree_in(s.var) > 0)
        fail(ErrorKind::InvalidArgument, "circular substitution");
      for (const auto& t : out) {
        if (&t == &s || s.value.degree_in(t.var) <= 0) continue;
        s.value = s.value.substitute(t.var, t.value);
        changed = true;
      }
    }
    if (!changed) return out;
  }
  fail(ErrorKind::InvalidArgument, "circular substitution");
}

MultiPoly substitute_all(const MultiPoly& p, std::span<const Substitution> subs) {
  MultiPoly r = p;
  for (const auto& s : resolve_substitutions(subs)) r = r.substitute(s.var, s.value);
  return r;
}

}  // namespace nilflex
