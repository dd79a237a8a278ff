#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "nilflex/catalog.hpp"

using namespace nilflex;

namespace {

const CatalogEntry& row(int index) { return six_dim_catalog().at(static_cast<std::size_t>(index - 1)); }

const VerifyReport& shared_report() {
  static const VerifyReport r = verify_all(kDefaultSeed, 0);
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

// Restores NILFLEX_SEED on scope exit.
class SeedEnv {
 public:
  SeedEnv() {
    if (const char* v = std::getenv("NILFLEX_SEED")) saved_ = v;
  }
  ~SeedEnv() {
    if (saved_) setenv("NILFLEX_SEED", saved_->c_str(), 1);
    else unsetenv("NILFLEX_SEED");
  }

 private:
  std::optional<std::string> saved_;
};

}  // namespace

TEST(Catalog, Shape) {
  const auto& c = six_dim_catalog();
  ASSERT_EQ(c.size(), 34u);
  int symplectic = 0, flexible = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(c[i].index, static_cast<int>(i) + 1);
    symplectic += c[i].symplectic;
    flexible += c[i].flexible();
    EXPECT_EQ(c[i].symplectic, c[i].moduli.has_value());
  }
  EXPECT_EQ(symplectic, 26);
  EXPECT_EQ(flexible, 5);
  EXPECT_EQ(row(7).structure, "(0,0,12,13,23,14-25)");
  EXPECT_EQ(row(7).h4, (std::set<std::size_t>{2, 3, 4}));
  EXPECT_EQ(row(11).h5, (std::set<std::size_t>{0, 2}));
  EXPECT_EQ(four_dim_catalog().size(), 3u);
}

TEST(RunEntry, FlexibleRowMatches) {
  const EntryReport r = run_entry(row(7), kDefaultSeed);
  EXPECT_TRUE(r.matches()) << (r.mismatches.empty() ? "" : r.mismatches.front())
                           << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_TRUE(r.flexible());
  EXPECT_EQ(r.analysis.top2, (std::set<std::size_t>{2, 3, 4}));
  EXPECT_EQ(r.pf_matches, std::optional<bool>(true));
  ASSERT_TRUE(r.analysis.certificate.has_value());
  EXPECT_TRUE(r.analysis.certificate->segment_ok);
  EXPECT_GE(r.analysis.oracle.size(), 2u);
  EXPECT_TRUE(r.analysis.oracle_ok());
}

TEST(RunEntry, DashRowMatches) {
  const EntryReport r = run_entry(row(1), kDefaultSeed);
  EXPECT_TRUE(r.matches());
  EXPECT_FALSE(r.analysis.symplectic);
  EXPECT_FALSE(r.flexible());
}

TEST(RunEntry, StratumWithOddDrop) {
  const EntryReport r = run_entry(row(31), kDefaultSeed);
  EXPECT_TRUE(r.matches());
  EXPECT_EQ(r.analysis.top2, (std::set<std::size_t>{7, 8}));
  EXPECT_EQ(r.analysis.top1, (std::set<std::size_t>{2}));
}

TEST(FourDim, HarmonicThirdNumbers) {
  for (const auto& e : four_dim_catalog()) {
    const FourDimReport r = run_four_dim(e, kDefaultSeed);
    EXPECT_TRUE(r.matches) << e.name;
    EXPECT_TRUE(r.oracle_ok) << e.name;
    EXPECT_EQ(r.b1, static_cast<std::size_t>(e.b1));
    EXPECT_EQ(r.h3, std::set<std::size_t>{e.h3});
  }
  const KtCupReport kt = kt_cup_report(kDefaultSeed);
  EXPECT_EQ(kt.im_l, 2u);
  EXPECT_EQ(kt.cup_image, 3u);
  EXPECT_TRUE(kt.h3_constant);
}

TEST(Verify, InternalChecksPass) {
  const VerifyReport& r = shared_report();
  ASSERT_EQ(r.entries.size(), 34u);
  for (const auto& e : r.entries) EXPECT_TRUE(e.failures.empty()) << e.entry.structure << ": " << e.failures.front();
  for (const auto& f : r.four_dim) EXPECT_TRUE(f.matches);
}

TEST(Verify, IndependentOfThreadCount) {
  const VerifyReport one = verify_all(kDefaultSeed, 1);
  EXPECT_EQ(emit(one, Format::Json), emit(shared_report(), Format::Json));
}

TEST(Emit, MarkdownTable) {
  const auto lines = lines_of(emit(shared_report(), Format::Markdown));
  ASSERT_GE(lines.size(), 36u);
  EXPECT_EQ(lines[0].rfind("| # | b1 | b2 | 6-s | structure |", 0), 0u);
  std::size_t rows = 0;
  for (const auto& l : lines)
    if (l.size() > 2 && l[0] == '|' && std::isdigit(static_cast<unsigned char>(l[2]))) ++rows;
  EXPECT_EQ(rows, 34u);
}

TEST(Emit, CsvHeaderAndRows) {
  const auto lines = lines_of(emit(shared_report(), Format::Csv));
  ASSERT_EQ(lines.size(), 35u);
  EXPECT_EQ(lines[0], "b1,b2,s,h4,h5,moduli,flexible,structure");
  EXPECT_NE(lines[7].find("2;3;4"), std::string::npos);
}

TEST(Emit, JsonSchema) {
  const auto j = nlohmann::json::parse(emit(shared_report(), Format::Json));
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["entries"].size(), 34u);
  EXPECT_TRUE(j.contains("four_dim"));
  EXPECT_TRUE(j.contains("kodaira_thurston"));
  EXPECT_EQ(j["table_match"].get<bool>(), shared_report().table_match());
}

TEST(Emit, AnalysisFormats) {
  AnalyzeOptions opt;
  opt.lattice_draws = 20;
  const AnalysisReport a = analyze("(0,0,12,13,14,15)", opt);
  EXPECT_EQ(a.normalized, "(0,0,12,13,14,15)");
  for (Format f : {Format::Text, Format::Markdown, Format::Csv, Format::Json}) EXPECT_FALSE(emit(a, f).empty());
  EXPECT_NO_THROW(nlohmann::json::parse(emit(a, Format::Json)));
}

TEST(Format, Names) {
  EXPECT_EQ(parse_format("md"), Format::Markdown);
  EXPECT_EQ(parse_format("markdown"), Format::Markdown);
  EXPECT_EQ(parse_format("csv"), Format::Csv);
  EXPECT_EQ(parse_format("json"), Format::Json);
  EXPECT_EQ(parse_format("text"), Format::Text);
  EXPECT_THROW(parse_format("xml"), Error);
}

TEST(Assignment, ParsesAndRejects) {
  const std::vector<std::string> names = {"A", "B", "C"};
  EXPECT_EQ(parse_assignment("A=1,B=-2/3", names), (Vector{1, Rational(-2, 3), 0}));
  EXPECT_EQ(parse_assignment(" C = 5 ", names), (Vector{0, 0, 5}));
  for (const char* bad : {"D=1", "A=1,A=2", "A", "A=x", "=1"}) EXPECT_THROW(parse_assignment(bad, names), Error) << bad;
}

TEST(Seed, EnvironmentOverride) {
  SeedEnv guard;
  unsetenv("NILFLEX_SEED");
  EXPECT_EQ(default_seed(), kDefaultSeed);
  setenv("NILFLEX_SEED", "0x10", 1);
  EXPECT_EQ(default_seed(), 16u);
  setenv("NILFLEX_SEED", "42", 1);
  EXPECT_EQ(default_seed(), 42u);
  setenv("NILFLEX_SEED", "forty", 1);
  EXPECT_THROW(default_seed(), Error);
}

TEST(Analyze, Errors) {
  EXPECT_THROW(analyze("(0,0,12,34,0,0)", AnalyzeOptions{}), Error);
  EXPECT_THROW(analyze("(0,0,0,12,34)", AnalyzeOptions{}), Error);
}
