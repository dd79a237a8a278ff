// Exercises the shared library through its C header only.

#include <gtest/gtest.h>

#include <memory>
#include <string>

#include "nilflex.h"

namespace {

using AlgebraPtr = std::unique_ptr<nf_algebra, void (*)(nf_algebra*)>;

AlgebraPtr parse(const char* s) {
  nf_algebra* a = nullptr;
  EXPECT_EQ(nf_algebra_parse(s, &a), NF_OK) << nf_last_error();
  return AlgebraPtr(a, nf_algebra_free);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  nf_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, ParseAndQuery) {
  auto a = parse("(0,0,12,13,23,14-25)");
  int dim = 0, step = 0;
  ASSERT_EQ(nf_algebra_dim(a.get(), &dim), NF_OK);
  ASSERT_EQ(nf_algebra_step_length(a.get(), &step), NF_OK);
  EXPECT_EQ(dim, 6);
  EXPECT_EQ(step, 4);

  char* norm = nullptr;
  ASSERT_EQ(nf_algebra_normalized(a.get(), &norm), NF_OK);
  EXPECT_EQ(take(norm), "(0,0,12,13,23,14-25)");

  size_t betti[7] = {}, count = 0;
  ASSERT_EQ(nf_algebra_betti(a.get(), betti, 7, &count), NF_OK);
  EXPECT_EQ(count, 7u);
  EXPECT_EQ(betti[1], 2u);
  EXPECT_EQ(betti[2], 4u);
  EXPECT_EQ(betti[3], 6u);

  size_t only_count = 0;
  EXPECT_EQ(nf_algebra_betti(a.get(), nullptr, 0, &only_count), NF_OK);
  EXPECT_EQ(only_count, 7u);
}

TEST(CApi, ParametersPfaffianAndHarmonicNumbers) {
  auto a = parse("(0,0,12,13,23,14-25)");
  char* names = nullptr;
  ASSERT_EQ(nf_algebra_parameters(a.get(), &names), NF_OK);
  EXPECT_EQ(take(names), "A,B,C,D");
  char* pf = nullptr;
  ASSERT_EQ(nf_algebra_pfaffian(a.get(), &pf), NF_OK);
  EXPECT_FALSE(take(pf).empty());

  size_t h = 99;
  ASSERT_EQ(nf_algebra_harmonic_betti(a.get(), "A=2,B=-1,C=1,D=1", 4, &h), NF_OK);
  EXPECT_EQ(h, 2u);
  ASSERT_EQ(nf_algebra_harmonic_betti(a.get(), "A=1,C=1,D=2", 4, &h), NF_OK);
  EXPECT_EQ(h, 4u);
  EXPECT_EQ(nf_algebra_harmonic_betti(a.get(), "A=1", 4, &h), NF_ERR_NO_SYMPLECTIC);
  EXPECT_EQ(nf_algebra_harmonic_betti(a.get(), "Q=1", 4, &h), NF_ERR_INVALID_ARGUMENT);
}

TEST(CApi, ErrorCodes) {
  nf_algebra* a = nullptr;
  EXPECT_EQ(nf_algebra_parse("(0,0,12,34,0,0)", &a), NF_ERR_PARSE);
  EXPECT_EQ(a, nullptr);
  EXPECT_NE(std::string(nf_last_error()), "");
  EXPECT_EQ(nf_algebra_parse("(0,0,0,12,34)", &a), NF_ERR_JACOBI);
  EXPECT_EQ(nf_algebra_parse(nullptr, &a), NF_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(nf_algebra_dim(nullptr, nullptr), NF_ERR_INVALID_ARGUMENT);
  EXPECT_STREQ(nf_status_name(NF_ERR_JACOBI), "Jacobi violation");

  auto odd = parse("(0,0,12)");
  char* pf = nullptr;
  EXPECT_EQ(nf_algebra_pfaffian(odd.get(), &pf), NF_ERR_DIMENSION);

  nf_format f = NF_FORMAT_TEXT;
  EXPECT_EQ(nf_parse_format("csv", &f), NF_OK);
  EXPECT_EQ(f, NF_FORMAT_CSV);
  EXPECT_EQ(nf_parse_format("yaml", &f), NF_ERR_INVALID_ARGUMENT);

  char* out = nullptr;
  EXPECT_EQ(nf_harmonic("(0,0,12,0)", "A=1", "14+23", NF_FORMAT_TEXT, &out), NF_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(nf_harmonic("(0,0,12,0)", nullptr, "34", NF_FORMAT_TEXT, &out), NF_ERR_NOT_COCYCLE);
}

TEST(CApi, HarmonicAndProductReports) {
  char* out = nullptr;
  ASSERT_EQ(nf_harmonic("(0,0,12,0)", nullptr, "14+23", NF_FORMAT_JSON, &out), NF_OK) << nf_last_error();
  const std::string h = take(out);
  EXPECT_NE(h.find("\"h\""), std::string::npos);

  ASSERT_EQ(nf_product("(0,0,12,0)", "A=1,D=1", "(0,0)", "A=1", NF_FORMAT_TEXT, &out), NF_OK) << nf_last_error();
  EXPECT_FALSE(take(out).empty());
}

TEST(CApi, AnalyzeAndVerify) {
  char* out = nullptr;
  ASSERT_EQ(nf_analyze("(0,0,12,13,23,14-25)", 7, 2, NF_FORMAT_JSON, &out), NF_OK) << nf_last_error();
  EXPECT_NE(take(out).find("\"certificate\""), std::string::npos);

  int table_ok = -1, all_ok = -1;
  ASSERT_EQ(nf_verify(1, 0, NF_FORMAT_CSV, &out, &table_ok, &all_ok), NF_OK) << nf_last_error();
  const std::string csv = take(out);
  EXPECT_EQ(csv.rfind("b1,b2,s,h4,h5,moduli,flexible,structure", 0), 0u);
  EXPECT_TRUE(table_ok == 0 || table_ok == 1);
  EXPECT_TRUE(all_ok == 0 || all_ok == 1);
  EXPECT_LE(all_ok, table_ok);
}

TEST(CApi, VersionAndSeed) {
  EXPECT_STREQ(nf_version(), "1.0.0");
  uint64_t seed = 0;
  EXPECT_EQ(nf_default_seed(&seed), NF_OK);
  EXPECT_EQ(nf_default_seed(nullptr), NF_ERR_INVALID_ARGUMENT);
}
