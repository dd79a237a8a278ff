#pragma once

#include <stdexcept>
#include <string>

namespace nilflex {

enum class ErrorKind {
  Parse,
  Jacobi,
  NotNilpotent,
  Dimension,
  NotCocycle,
  NoSymplectic,
  Degenerate,
  InvalidArgument,
  Convention,
  Mismatch,
};

const char* to_string(ErrorKind kind);

// All failures inside the library are reported through this type; the C
// interface maps `kind()` onto its status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace nilflex
