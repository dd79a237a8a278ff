// Command-line front end. Talks to the library only through nilflex.h.

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "nilflex.h"

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitError = 2;

struct CError {
  nf_status status;
};

void check(nf_status s) {
  if (s != NF_OK) throw CError{s};
}

// Owns a string returned by the C API.
std::string take(char* s) {
  std::unique_ptr<char, void (*)(char*)> guard(s, nf_string_free);
  return s ? std::string(s) : std::string();
}

std::uint64_t resolve_seed(const std::string& text) {
  if (text.empty()) {
    std::uint64_t s = 0;
    check(nf_default_seed(&s));
    return s;
  }
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 0);
  if (errno || end == text.c_str() || *end) throw CLI::ValidationError("--seed", "not an integer: " + text);
  return v;
}

nf_format resolve_format(const std::string& name) {
  nf_format f{};
  check(nf_parse_format(name.c_str(), &f));
  return f;
}

void write_out(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symplectically harmonic cohomology of nilmanifolds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nf_version()));

  std::string seed_text, format = "text", out_path;
  unsigned threads = 0;

  auto* table = app.add_subcommand("table", "Recompute the six-dimensional table");
  std::string table_format = "md";
  table->add_option("--format", table_format, "md, csv or json")->check(CLI::IsMember({"md", "markdown", "csv", "json"}));
  table->add_option("--out", out_path, "Write to FILE instead of stdout");
  table->add_option("--seed", seed_text, "Sampling seed (default: NILFLEX_SEED or built-in)");
  table->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* analyze = app.add_subcommand("analyze", "Run the full pipeline on one algebra");
  std::string spec;
  std::size_t points = 0;
  analyze->add_option("spec", spec, "Structure string, e.g. (0,0,12,13,23,14-25)")->required();
  analyze->add_option("--points", points, "Random sample points (default 6)");
  analyze->add_option("--seed", seed_text, "Sampling seed");
  analyze->add_option("--format", format, "text, md, csv or json");

  auto* harmonic = app.add_subcommand("harmonic", "Harmonic profile and identity suite at one form");
  std::string omega, form;
  harmonic->add_option("spec", spec, "Structure string")->required();
  auto* omega_opt = harmonic->add_option("--omega", omega, "Parameters in the H2 basis, e.g. \"A=1,B=0,C=2\"");
  auto* form_opt = harmonic->add_option("--form", form, "A closed 2-form, e.g. \"16+25-34\"");
  omega_opt->excludes(form_opt);
  harmonic->add_option("--format", format, "text, md, csv or json");

  auto* verify = app.add_subcommand("verify", "Regression-test the built-in catalog");
  bool strict = false;
  verify->add_flag("--strict", strict, "Also fail on internal consistency checks");
  verify->add_option("--seed", seed_text, "Sampling seed");
  verify->add_option("--threads", threads, "Worker threads (0 = all cores)");
  verify->add_option("--format", format, "text, md, csv or json");

  auto* product = app.add_subcommand("product", "Harmonic numbers of a direct sum");
  std::string spec2, omega1, omega2;
  product->add_option("spec1", spec, "First structure string")->required();
  product->add_option("spec2", spec2, "Second structure string")->required();
  product->add_option("--omega1", omega1, "Parameters for the first algebra")->required();
  product->add_option("--omega2", omega2, "Parameters for the second algebra")->required();
  product->add_option("--format", format, "text or json");

  auto* params = app.add_subcommand("params", "Show the H2 parameters and Pf of an algebra");
  params->add_option("spec", spec, "Structure string")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    char* raw = nullptr;
    if (*table) {
      check(nf_verify(resolve_seed(seed_text), threads, resolve_format(table_format), &raw, nullptr, nullptr));
      write_out(take(raw), out_path);
    } else if (*analyze) {
      check(nf_analyze(spec.c_str(), resolve_seed(seed_text), points, resolve_format(format), &raw));
      std::cout << take(raw);
    } else if (*harmonic) {
      if (omega.empty() && form.empty()) throw CLI::ValidationError("harmonic", "give --omega or --form");
      check(nf_harmonic(spec.c_str(), omega.empty() ? nullptr : omega.c_str(), form.empty() ? nullptr : form.c_str(),
                        resolve_format(format), &raw));
      std::cout << take(raw);
    } else if (*verify) {
      int table_ok = 0, all_ok = 0;
      check(nf_verify(resolve_seed(seed_text), threads, resolve_format(format), &raw, &table_ok, &all_ok));
      std::cout << take(raw);
      return (strict ? all_ok && table_ok : table_ok) ? 0 : kExitMismatch;
    } else if (*product) {
      check(nf_product(spec.c_str(), omega1.c_str(), spec2.c_str(), omega2.c_str(), resolve_format(format), &raw));
      std::cout << take(raw);
    } else if (*params) {
      nf_algebra* a = nullptr;
      check(nf_algebra_parse(spec.c_str(), &a));
      std::unique_ptr<nf_algebra, void (*)(nf_algebra*)> guard(a, nf_algebra_free);
      char* names = nullptr;
      char* pf = nullptr;
      check(nf_algebra_parameters(a, &names));
      const std::string n = take(names);
      check(nf_algebra_pfaffian(a, &pf));
      std::cout << "parameters " << n << "\nPf " << take(pf) << "\n";
    }
  } catch (const CError& e) {
    std::cerr << "nilflex: " << nf_status_name(e.status) << ": " << nf_last_error() << "\n";
    return kExitError;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "nilflex: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
