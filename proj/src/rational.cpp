#include "nilflex/rational.hpp"

#include <cctype>

#include "nilflex/error.hpp"

namespace nilflex {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Jacobi: return "Jacobi violation";
    case ErrorKind::NotNilpotent: return "not nilpotent";
    case ErrorKind::Dimension: return "dimension error";
    case ErrorKind::NotCocycle: return "not a cocycle";
    case ErrorKind::NoSymplectic: return "no symplectic structure";
    case ErrorKind::Degenerate: return "degenerate form";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Convention: return "internal convention fault";
    case ErrorKind::Mismatch: return "mismatch";
  }
  return "unknown error";
}

namespace {

bool valid_integer(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
    fail(ErrorKind::Parse, "malformed rational '" + s + "'");
  Integer d(den);
  if (d == 0) fail(ErrorKind::Parse, "zero denominator in '" + s + "'");
  Rational q{Integer(num), d};
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace nilflex
