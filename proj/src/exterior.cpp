#include "nilflex/exterior.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nilflex {

MultiIndex MultiIndex::of(std::initializer_list<int> indices) {
  return of(std::span<const int>(indices.begin(), indices.size()));
}

MultiIndex MultiIndex::of(std::span<const int> indices) {
  std::uint16_t bits = 0;
  for (int i : indices) {
    if (i < 1 || i > kMaxDim) fail(ErrorKind::InvalidArgument, "index out of range");
    const auto b = static_cast<std::uint16_t>(1u << (i - 1));
    if (bits & b) fail(ErrorKind::InvalidArgument, "repeated index");
    bits |= b;
  }
  return from_bits(bits);
}

std::vector<int> MultiIndex::indices() const {
  std::vector<int> out;
  for (int i = 1; i <= 16; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

bool operator<(MultiIndex a, MultiIndex b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto ia = a.indices(), ib = b.indices();
  return ia < ib;
}

int wedge_sign(MultiIndex a, MultiIndex b) {
  if (!a.disjoint(b)) return 0;
  // Each index of b must move past every larger index of a.
  int inversions = 0;
  for (int j : b.indices()) inversions += std::popcount(static_cast<unsigned>(a.bits() >> j));
  return inversions % 2 ? -1 : 1;
}

std::string to_string(MultiIndex m) {
  if (m.degree() == 0) return "1";
  std::string s;
  for (int i : m.indices()) s += std::to_string(i);
  return s;
}

ExteriorBasis::ExteriorBasis(int n)
    : n_(n), by_degree_(static_cast<std::size_t>(n) + 1), position_(std::size_t{1} << n) {
  if (n < 0 || n > kMaxDim) fail(ErrorKind::Dimension, "dimension must be in 0..9");
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    auto m = MultiIndex::from_bits(static_cast<std::uint16_t>(bits));
    by_degree_[static_cast<std::size_t>(m.degree())].push_back(m);
  }
  for (auto& v : by_degree_) {
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i < v.size(); ++i) position_[v[i].bits()] = i;
  }
}

PolyForm to_poly(const QForm& f, std::size_t nvars) {
  PolyForm r(f.degree());
  for (const auto& [m, c] : f.terms()) r.add(m, MultiPoly::constant(nvars, c));
  return r;
}

QForm evaluate(const PolyForm& f, std::span<const Rational> point) {
  QForm r(f.degree());
  for (const auto& [m, c] : f.terms()) r.add(m, c.eval(point));
  return r;
}

namespace {

template <typename T, typename Fmt>
std::string form_string(const KForm<T>& f, Fmt&& coeff) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    auto [negative, text] = coeff(c);
    if (negative) os << (first ? "-" : " - ");
    else if (!first) os << " + ";
    first = false;
    if (m.degree() == 0) {
      os << (text.empty() ? "1" : text);
      continue;
    }
    if (!text.empty()) os << text << ' ';
    os << 'a' << to_string(m);
  }
  return os.str();
}

}  // namespace

std::string to_string(const QForm& f) {
  return form_string(f, [](const Rational& c) {
    Rational a = abs(c);
    return std::pair<bool, std::string>{sgn(c) < 0, a == 1 ? "" : a.get_str()};
  });
}

std::string to_string(const PolyForm& f, std::span<const std::string> names) {
  return form_string(f, [names](const MultiPoly& c) {
    if (c.terms().size() == 1) {
      const Rational& lc = c.terms().begin()->second;
      MultiPoly mag = sgn(lc) < 0 ? -c : c;
      std::string s = to_string(mag, names);
      return std::pair<bool, std::string>{sgn(lc) < 0, s == "1" ? "" : s};
    }
    return std::pair<bool, std::string>{false, "(" + to_string(c, names) + ")"};
  });
}

QForm parse_form(std::string_view text, int n) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto error = [&](std::size_t pos, const std::string& msg) -> void {
    fail(ErrorKind::Parse, msg + " at position " + std::to_string(pos) + " in '" + s + "'");
  };
  if (s == "0") return QForm(2);
  QForm f;
  bool degree_set = false;
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      error(pos, "expected '+' or '-'");
    }
    first = false;
    Rational coeff = sign;
    // Optional "<rational>*" multiplier.
    if (auto star = s.find('*', pos); star != std::string::npos) {
      auto next = s.find_first_of("+-", pos);
      if (next == std::string::npos || star < next) {
        coeff *= parse_rational(s.substr(pos, star - pos));
        pos = star + 1;
      }
    }
    std::size_t start = pos;
    std::vector<int> idx;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      idx.push_back(s[pos] - '0');
      ++pos;
    }
    if (idx.empty()) error(start, "expected an index term");
    for (int i : idx)
      if (i < 1 || i > n) error(start, "index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
    if (!degree_set) {
      f = QForm(static_cast<int>(idx.size()));
      degree_set = true;
    } else if (static_cast<int>(idx.size()) != f.degree()) {
      error(start, "terms of different degree");
    }
    // Sign of the permutation that sorts the written order.
    int inversions = 0;
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        if (idx[a] == idx[b]) error(start, "repeated index in term");
        if (idx[a] > idx[b]) ++inversions;
      }
    if (inversions % 2) coeff = -coeff;
    f.add(MultiIndex::of(std::span<const int>(idx)), coeff);
  }
  if (!degree_set) error(0, "empty form");
  return f;
}

}  // namespace nilflex
