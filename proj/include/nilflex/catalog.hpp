#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nilflex/harmonic.hpp"
#include "nilflex/symplectic.hpp"

namespace nilflex {

inline constexpr std::uint64_t kDefaultSeed = 0x6e696c666c6578ull;
inline constexpr int kSchemaVersion = 1;

/// NILFLEX_SEED if set (decimal or 0x-hex), otherwise kDefaultSeed.
std::uint64_t default_seed();

/// Named stratum with the harmonic numbers expected on it.
struct StratumSpec {
  std::string label;
  std::vector<std::string> conditions;
  std::optional<std::size_t> h4, h5;  // h_{2m-2}, h_{2m-1}
};

/// One row of the six-dimensional table. Dash rows have empty h sets, no
/// moduli value and symplectic == false.
struct CatalogEntry {
  int index = 0;
  std::string structure;
  int b1 = 0, b2 = 0, six_minus_s = 0;
  std::string reducible;  // "" when irreducible, e.g. "1+5"
  bool symplectic = false;
  std::set<std::size_t> h4, h5;
  std::optional<std::size_t> moduli;

  // Regression data for the flexible rows: an H² basis, the nondegeneracy
  // condition in its parameters, and strata where ranks drop.
  std::vector<std::string> h2_basis;
  std::string pf;
  std::vector<StratumSpec> strata;

  bool flexible() const { return h4.size() > 1 || h5.size() > 1; }
};

const std::vector<CatalogEntry>& six_dim_catalog();

struct FourDimEntry {
  std::string name;
  std::string structure;
  int b1 = 0;
  std::size_t h3 = 0;
  std::string omega;  // a symplectic form, e.g. "14+23"
};

const std::vector<FourDimEntry>& four_dim_catalog();

/// Parameter family of an algebra, in the catalog's H² basis when the
/// normalized structure matches a row that has one.
SymplecticFamily catalog_family(const NilpotentLieAlgebra& g);

struct OracleCheck {
  Vector point;
  std::vector<std::size_t> h;  // oracle h_k, k = 0..n
  std::size_t rank_top1 = 0, rank_top2 = 0;
  bool agrees = false;        // oracle h_{2m-1}, h_{2m-2} equal the ranks
  bool identities_ok = false;
  bool low_degrees_ok = false;  // h_k = b_k for k <= 2
  bool lefschetz_type = false;
  std::string failure;
};

struct CertificateReport {
  FlexibilityCertificate certificate;
  bool segment_ok = false;
};

struct StratumResult {
  std::string label;
  std::size_t top2 = 0, top1 = 0;
  Vector witness;
  bool matches = true;
};

struct AnalysisReport {
  std::string structure;   // as given
  std::string normalized;  // round-tripped
  std::vector<std::size_t> betti;
  int step = 0;
  bool symplectic = false;
  std::vector<std::string> parameters;
  std::vector<std::string> h2_basis;
  std::string pf;
  MultiPoly pf_poly;
  std::optional<std::size_t> moduli;
  int m = 0;
  // h_{2m-1} and h_{2m-2}: generic values and every value observed.
  std::optional<std::size_t> generic_top1, generic_top2;
  std::set<std::size_t> top1, top2;
  std::vector<RankObservation> observations;
  std::vector<StratumResult> strata;
  std::optional<CertificateReport> certificate;
  std::vector<OracleCheck> oracle;

  // Structural checks.
  bool euler_ok = true;        // Σ(-1)^k b_k = 0 (symplectic rows)
  bool b3_relation_ok = true;  // b3 = 2(b2 - b1 + 1), 6-dim only
  bool poincare_ok = true;     // pairing matrices nonsingular
  bool h_top1_even = true;
  bool rho_even = true;
  bool semicontinuity_ok = true;

  bool structural_ok() const {
    return euler_ok && b3_relation_ok && poincare_ok && h_top1_even && rho_even && semicontinuity_ok;
  }
  bool oracle_ok() const;
};

struct AnalyzeOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t random_points = 6;
  std::size_t lattice_draws = 200;
  std::size_t oracle_points = 2;
  std::vector<StratumSpec> strata;
};

/// Full pipeline on one algebra: cohomology, family, ranks, strata,
/// certificate, oracle spot checks and structural checks.
AnalysisReport analyze(const std::string& structure, const AnalyzeOptions& options);

struct EntryReport {
  CatalogEntry entry;
  AnalysisReport analysis;
  std::optional<bool> pf_matches;  // only rows with a stored condition
  std::vector<std::string> mismatches;  // against the table's columns
  std::vector<std::string> failures;    // internal checks: oracle, strata, Pf, structure
  bool table_matches() const { return mismatches.empty(); }
  bool matches() const { return mismatches.empty() && failures.empty(); }
  bool flexible() const { return analysis.certificate.has_value(); }
};

EntryReport run_entry(const CatalogEntry& e, std::uint64_t seed);

struct FourDimReport {
  FourDimEntry entry;
  std::size_t b1 = 0;
  std::set<std::size_t> h3;
  bool oracle_ok = false;
  bool matches = false;
};

FourDimReport run_four_dim(const FourDimEntry& e, std::uint64_t seed);

struct KtCupReport {
  std::size_t im_l = 0;         // rank of L: H¹ -> H³ at ω = α14 + α23
  std::size_t cup_image = 0;    // dim image H¹ ⊗ H² -> H³
  bool h3_constant = false;     // h3 takes one value on sampled points
};

KtCupReport kt_cup_report(std::uint64_t seed);

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<EntryReport> entries;
  std::vector<FourDimReport> four_dim;
  KtCupReport kt;
  std::vector<std::string> flexible;  // normalized structures
  bool exactly_five_flexible = false;
  bool flexible_set_matches = false;
  /// Table columns, 4-dim values, KT numbers and the flexible set.
  bool table_match() const;
  /// table_match() plus every internal consistency check.
  bool all_match() const;
};

/// Runs every catalog entry on `threads` workers (0 = hardware concurrency).
/// Results do not depend on the thread count.
VerifyReport verify_all(std::uint64_t seed, unsigned threads = 0);

enum class Format { Markdown, Csv, Json, Text };

/// "md"/"markdown", "csv", "json", "text"; InvalidArgument otherwise.
Format parse_format(const std::string& name);

std::string emit(const VerifyReport& report, Format format);
std::string emit(const AnalysisReport& report, Format format);
std::string emit_harmonic(const FixedSymplecticForm& f, const SymplecticFamily& family, const Vector& point,
                          Format format);
std::string emit_product(const SymplecticFamily& f1, const Vector& p1, const SymplecticFamily& f2,
                         const Vector& p2, Format format);

/// Parses "A=1,B=-2/3" against the parameter names; unlisted parameters are 0.
Vector parse_assignment(const std::string& text, std::span<const std::string> names);

}  // namespace nilflex
