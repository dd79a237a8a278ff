#include "nilflex.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "nilflex/catalog.hpp"

using namespace nilflex;

struct nf_algebra {
  NilpotentLieAlgebra g;
  std::optional<SymplecticFamily> family;  // even dimension only
};

namespace {

thread_local std::string last_error;

nf_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
      return NF_ERR_PARSE;
    case ErrorKind::Jacobi:
      return NF_ERR_JACOBI;
    case ErrorKind::NotNilpotent:
      return NF_ERR_NOT_NILPOTENT;
    case ErrorKind::Dimension:
      return NF_ERR_DIMENSION;
    case ErrorKind::NotCocycle:
      return NF_ERR_NOT_COCYCLE;
    case ErrorKind::NoSymplectic:
      return NF_ERR_NO_SYMPLECTIC;
    case ErrorKind::Degenerate:
      return NF_ERR_DEGENERATE;
    case ErrorKind::InvalidArgument:
      return NF_ERR_INVALID_ARGUMENT;
    case ErrorKind::Convention:
      return NF_ERR_CONVENTION;
    case ErrorKind::Mismatch:
      return NF_ERR_MISMATCH;
  }
  return NF_ERR_INTERNAL;
}

template <class F>
nf_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return NF_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return NF_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) fail(ErrorKind::InvalidArgument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Format format_of(nf_format f) {
  switch (f) {
    case NF_FORMAT_MARKDOWN:
      return Format::Markdown;
    case NF_FORMAT_CSV:
      return Format::Csv;
    case NF_FORMAT_JSON:
      return Format::Json;
    case NF_FORMAT_TEXT:
      return Format::Text;
  }
  fail(ErrorKind::InvalidArgument, "unknown format code " + std::to_string(static_cast<int>(f)));
}

const SymplecticFamily& family_of(const nf_algebra* a) {
  if (!a->family) fail(ErrorKind::Dimension, "odd-dimensional algebra has no symplectic family");
  return *a->family;
}

}  // namespace

extern "C" {

const char* nf_version(void) { return "1.0.0"; }

const char* nf_last_error(void) { return last_error.c_str(); }

const char* nf_status_name(nf_status s) {
  switch (s) {
    case NF_OK:
      return "ok";
    case NF_ERR_PARSE:
      return "parse error";
    case NF_ERR_JACOBI:
      return "Jacobi violation";
    case NF_ERR_NOT_NILPOTENT:
      return "not nilpotent";
    case NF_ERR_DIMENSION:
      return "dimension error";
    case NF_ERR_NOT_COCYCLE:
      return "not a cocycle";
    case NF_ERR_NO_SYMPLECTIC:
      return "no symplectic structure";
    case NF_ERR_DEGENERATE:
      return "degenerate form";
    case NF_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case NF_ERR_CONVENTION:
      return "convention mismatch";
    case NF_ERR_MISMATCH:
      return "mismatch";
    case NF_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void nf_string_free(char* s) { std::free(s); }

nf_status nf_default_seed(uint64_t* out) {
  return guarded([&] {
    require(out, "out");
    *out = default_seed();
  });
}

nf_status nf_parse_format(const char* name, nf_format* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    switch (parse_format(name)) {
      case Format::Markdown:
        *out = NF_FORMAT_MARKDOWN;
        break;
      case Format::Csv:
        *out = NF_FORMAT_CSV;
        break;
      case Format::Json:
        *out = NF_FORMAT_JSON;
        break;
      case Format::Text:
        *out = NF_FORMAT_TEXT;
        break;
    }
  });
}

nf_status nf_algebra_parse(const char* structure, nf_algebra** out) {
  return guarded([&] {
    require(structure, "structure");
    require(out, "out");
    *out = nullptr;
    NilpotentLieAlgebra g = NilpotentLieAlgebra::parse(structure);
    std::optional<SymplecticFamily> fam;
    if (g.dim() % 2 == 0) fam = catalog_family(g);
    *out = new nf_algebra{std::move(g), std::move(fam)};
  });
}

void nf_algebra_free(nf_algebra* a) { delete a; }

nf_status nf_algebra_dim(const nf_algebra* a, int* out) {
  return guarded([&] {
    require(a, "algebra");
    require(out, "out");
    *out = a->g.dim();
  });
}

nf_status nf_algebra_step_length(const nf_algebra* a, int* out) {
  return guarded([&] {
    require(a, "algebra");
    require(out, "out");
    *out = a->g.step_length();
  });
}

nf_status nf_algebra_normalized(const nf_algebra* a, char** out) {
  return guarded([&] {
    require(a, "algebra");
    require(out, "out");
    *out = dup(to_string(a->g.spec()));
  });
}

nf_status nf_algebra_betti(const nf_algebra* a, size_t* out, size_t cap, size_t* count) {
  return guarded([&] {
    require(a, "algebra");
    require(count, "count");
    const auto b = a->family ? a->family->ring.betti_numbers() : CohomologyRing(a->g).betti_numbers();
    *count = b.size();
    if (cap > 0) require(out, "out");
    for (std::size_t i = 0; i < b.size() && i < cap; ++i) out[i] = b[i];
  });
}

nf_status nf_algebra_parameters(const nf_algebra* a, char** out) {
  return guarded([&] {
    require(a, "algebra");
    require(out, "out");
    std::string s;
    for (const auto& n : family_of(a).names) s += (s.empty() ? "" : ",") + n;
    *out = dup(s);
  });
}

nf_status nf_algebra_pfaffian(const nf_algebra* a, char** out) {
  return guarded([&] {
    require(a, "algebra");
    require(out, "out");
    const auto& f = family_of(a);
    *out = dup(to_string(f.pf, f.names));
  });
}

nf_status nf_algebra_harmonic_betti(const nf_algebra* a, const char* assignment, int j, size_t* out) {
  return guarded([&] {
    require(a, "algebra");
    require(assignment, "assignment");
    require(out, "out");
    const auto& f = family_of(a);
    *out = harmonic_betti_at(f, parse_assignment(assignment, f.names), j);
  });
}

nf_status nf_analyze(const char* structure, uint64_t seed, size_t points, nf_format format, char** out) {
  return guarded([&] {
    require(structure, "structure");
    require(out, "out");
    AnalyzeOptions opt;
    opt.seed = seed;
    if (points) opt.random_points = points;
    // Catalog rows get their stored strata.
    const std::string key = to_string(parse_spec(structure));
    for (const auto& e : six_dim_catalog())
      if (to_string(parse_spec(e.structure)) == key) opt.strata = e.strata;
    *out = dup(emit(analyze(structure, opt), format_of(format)));
  });
}

nf_status nf_harmonic(const char* structure, const char* assignment, const char* form, nf_format format,
                      char** out) {
  return guarded([&] {
    require(structure, "structure");
    require(out, "out");
    if ((assignment == nullptr) == (form == nullptr))
      fail(ErrorKind::InvalidArgument, "give exactly one of a parameter assignment and a form");
    const NilpotentLieAlgebra g = NilpotentLieAlgebra::parse(structure);
    const SymplecticFamily fam = catalog_family(g);
    Vector p;
    QForm omega(2);
    if (assignment) {
      p = parse_assignment(assignment, fam.names);
      omega = fam.omega_at(p);
    } else {
      omega = parse_form(form, g.dim());
      p = parameters_of(fam, omega);
    }
    *out = dup(emit_harmonic(invert_omega(g, omega), fam, p, format_of(format)));
  });
}

nf_status nf_product(const char* structure1, const char* assignment1, const char* structure2,
                     const char* assignment2, nf_format format, char** out) {
  return guarded([&] {
    require(structure1, "structure1");
    require(structure2, "structure2");
    require(assignment1, "assignment1");
    require(assignment2, "assignment2");
    require(out, "out");
    const SymplecticFamily f1 = catalog_family(NilpotentLieAlgebra::parse(structure1));
    const SymplecticFamily f2 = catalog_family(NilpotentLieAlgebra::parse(structure2));
    const Vector p1 = parse_assignment(assignment1, f1.names);
    const Vector p2 = parse_assignment(assignment2, f2.names);
    *out = dup(emit_product(f1, p1, f2, p2, format_of(format)));
  });
}

nf_status nf_verify(uint64_t seed, unsigned threads, nf_format format, char** out, int* table_ok, int* all_ok) {
  return guarded([&] {
    require(out, "out");
    const VerifyReport r = verify_all(seed, threads);
    *out = dup(emit(r, format_of(format)));
    if (table_ok) *table_ok = r.table_match() ? 1 : 0;
    if (all_ok) *all_ok = r.all_match() ? 1 : 0;
  });
}

}  // extern "C"
