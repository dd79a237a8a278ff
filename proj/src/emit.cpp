#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"

#include "nilflex/catalog.hpp"

namespace nilflex {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string set_text(const std::set<std::size_t>& s, const char* sep) {
  if (s.empty()) return "-";
  std::string out;
  for (auto v : s) {
    if (!out.empty()) out += sep;
    out += std::to_string(v);
  }
  return out;
}

std::string opt_text(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "-"; }

std::string point_text(std::span<const Rational> p, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += (i < names.size() ? names[i] : "p" + std::to_string(i)) + "=" + to_string(p[i]);
  }
  return out;
}

ordered_json point_json(std::span<const Rational> p) {
  ordered_json a = ordered_json::array();
  for (const auto& q : p) a.push_back(to_string(q));
  return a;
}

template <class T>
ordered_json opt_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json analysis_json(const AnalysisReport& a) {
  ordered_json j;
  j["structure"] = a.structure;
  j["normalized"] = a.normalized;
  j["betti"] = a.betti;
  j["step"] = a.step;
  j["symplectic"] = a.symplectic;
  j["parameters"] = a.parameters;
  j["h2_basis"] = a.h2_basis;
  j["pf"] = a.pf;
  j["moduli"] = opt_json(a.moduli);
  j["m"] = a.m;
  const int m = a.m;
  ordered_json h = ordered_json::object();
  if (a.symplectic) {
    const std::string d1 = "h" + std::to_string(2 * m - 1), d2 = "h" + std::to_string(2 * m - 2);
    h[d2] = {{"generic", opt_json(a.generic_top2)}, {"values", a.top2}};
    h[d1] = {{"generic", opt_json(a.generic_top1)}, {"values", a.top1}};
  }
  j["harmonic_betti"] = h;

  ordered_json strata = ordered_json::array();
  for (const auto& s : a.strata)
    strata.push_back({{"label", s.label},
                      {"h_top2", s.top2},
                      {"h_top1", s.top1},
                      {"witness", point_json(s.witness)},
                      {"matches", s.matches}});
  j["strata"] = strata;

  if (a.certificate) {
    const auto& c = a.certificate->certificate;
    j["certificate"] = {{"degree", c.degree},         {"point0", point_json(c.point0)},
                        {"point1", point_json(c.point1)}, {"rank0", c.rank0},
                        {"rank1", c.rank1},           {"label0", c.label0},
                        {"segment_ok", a.certificate->segment_ok}};
  } else {
    j["certificate"] = nullptr;
  }

  ordered_json oracle = ordered_json::array();
  for (const auto& o : a.oracle)
    oracle.push_back({{"point", point_json(o.point)},
                      {"h", o.h},
                      {"rank_top1", o.rank_top1},
                      {"rank_top2", o.rank_top2},
                      {"agrees", o.agrees},
                      {"identities_ok", o.identities_ok},
                      {"low_degrees_ok", o.low_degrees_ok},
                      {"lefschetz_type", o.lefschetz_type},
                      {"failure", o.failure}});
  j["oracle"] = oracle;
  j["structural"] = {{"euler", a.euler_ok},           {"b3_relation", a.b3_relation_ok},
                     {"poincare", a.poincare_ok},     {"h_top1_even", a.h_top1_even},
                     {"rho_even", a.rho_even},        {"semicontinuity", a.semicontinuity_ok}};
  return j;
}

ordered_json entry_json(const EntryReport& e) {
  ordered_json j;
  j["index"] = e.entry.index;
  j["expected"] = {{"structure", e.entry.structure},
                   {"b1", e.entry.b1},
                   {"b2", e.entry.b2},
                   {"six_minus_s", e.entry.six_minus_s},
                   {"reducible", e.entry.reducible},
                   {"h4", e.entry.h4},
                   {"h5", e.entry.h5},
                   {"moduli", opt_json(e.entry.moduli)},
                   {"flexible", e.entry.flexible()}};
  j["computed"] = analysis_json(e.analysis);
  j["flexible"] = e.flexible();
  j["pf_matches"] = opt_json(e.pf_matches);
  j["mismatches"] = e.mismatches;
  j["failures"] = e.failures;
  j["matches"] = e.matches();
  return j;
}

std::string verify_markdown(const VerifyReport& r) {
  std::ostringstream os;
  os << "| # | b1 | b2 | 6-s | structure | sum | h4 | h5 | moduli | flexible | match |\n"
     << "|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& e : r.entries) {
    const auto& a = e.analysis;
    const bool has = a.betti.size() > 2;
    os << "| " << e.entry.index << " | " << (has ? std::to_string(a.betti[1]) : "?") << " | "
       << (has ? std::to_string(a.betti[2]) : "?") << " | " << 6 - a.step << " | " << e.entry.structure << " | "
       << e.entry.reducible << " | " << set_text(a.top2, ",") << " | " << set_text(a.top1, ",") << " | "
       << opt_text(a.moduli) << " | " << (e.flexible() ? "yes" : "no") << " | " << (e.matches() ? "ok" : "FAIL")
       << " |\n";
  }
  return os.str();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string verify_csv(const VerifyReport& r) {
  std::ostringstream os;
  os << "b1,b2,s,h4,h5,moduli,flexible,structure\n";
  for (const auto& e : r.entries) {
    const auto& a = e.analysis;
    const bool has = a.betti.size() > 2;
    os << (has ? std::to_string(a.betti[1]) : "") << "," << (has ? std::to_string(a.betti[2]) : "") << ","
       << a.step << "," << set_text(a.top2, ";") << "," << set_text(a.top1, ";") << "," << opt_text(a.moduli)
       << "," << (e.flexible() ? "true" : "false") << "," << csv_quote(e.entry.structure) << "\n";
  }
  return os.str();
}

std::string verify_text(const VerifyReport& r) {
  std::ostringstream os;
  std::size_t ok = 0;
  for (const auto& e : r.entries) {
    if (e.matches()) {
      ++ok;
      continue;
    }
    os << "row " << e.entry.index << " " << e.entry.structure << ":\n";
    for (const auto& m : e.mismatches) os << "  table: " << m << "\n";
    for (const auto& m : e.failures) os << "  check: " << m << "\n";
  }
  os << ok << "/" << r.entries.size() << " rows match, " << r.flexible.size() << " flexible\n";
  for (const auto& f : r.flexible) os << "  flexible " << f << "\n";
  for (const auto& f : r.four_dim)
    os << f.entry.name << " " << f.entry.structure << ": b1=" << f.b1 << " h3=" << set_text(f.h3, ",")
       << (f.matches ? "" : "  MISMATCH") << "\n";
  os << "Kodaira-Thurston: Im L = " << r.kt.im_l << ", Im(H1 x H2 -> H3) = " << r.kt.cup_image
     << ", h3 constant: " << (r.kt.h3_constant ? "yes" : "no") << "\n";
  os << "seed 0x" << std::hex << r.seed << std::dec << "\n";
  const bool internal_ok =
      std::all_of(r.entries.begin(), r.entries.end(), [](const EntryReport& e) { return e.failures.empty(); }) &&
      std::all_of(r.four_dim.begin(), r.four_dim.end(), [](const FourDimReport& f) { return f.oracle_ok; });
  os << "table " << (r.table_match() ? "PASS" : "FAIL") << ", internal checks " << (internal_ok ? "PASS" : "FAIL")
     << "\n";
  return os.str();
}

std::string analysis_text(const AnalysisReport& a) {
  std::ostringstream os;
  os << "structure " << a.normalized << "\n";
  os << "betti";
  for (auto b : a.betti) os << " " << b;
  os << "\nstep " << a.step << "\n";
  if (a.m == 0) return os.str();
  os << "H2 basis:";
  for (std::size_t i = 0; i < a.h2_basis.size(); ++i)
    os << " " << (i < a.parameters.size() ? a.parameters[i] : "?") << ":" << a.h2_basis[i];
  os << "\nPf " << a.pf << "\n";
  if (!a.symplectic) {
    os << "no symplectic structure (Pf vanishes identically)\n";
    return os.str();
  }
  const int m = a.m;
  os << "moduli " << opt_text(a.moduli) << "\n";
  os << "h" << 2 * m - 2 << " generic " << opt_text(a.generic_top2) << ", observed {" << set_text(a.top2, ",")
     << "}\n";
  os << "h" << 2 * m - 1 << " generic " << opt_text(a.generic_top1) << ", observed {" << set_text(a.top1, ",")
     << "}\n";
  for (const auto& s : a.strata)
    os << "stratum " << s.label << ": h" << 2 * m - 2 << "=" << s.top2 << " h" << 2 * m - 1 << "=" << s.top1
       << (s.matches ? "" : "  (unexpected)") << "\n";
  if (a.certificate) {
    const auto& c = a.certificate->certificate;
    os << "flexible: h" << c.degree << " = " << c.rank0 << " at (" << point_text(c.point0, a.parameters) << ") ["
       << c.label0 << "], " << c.rank1 << " at (" << point_text(c.point1, a.parameters) << "); segment "
       << (a.certificate->segment_ok ? "ok" : "FAILED") << "\n";
  } else {
    os << "no flexibility observed\n";
  }
  for (const auto& o : a.oracle) {
    os << "oracle at (" << point_text(o.point, a.parameters) << "): h =";
    for (auto v : o.h) os << " " << v;
    os << (o.agrees && o.identities_ok && o.low_degrees_ok ? "  ok" : "  FAILED: " + o.failure) << "\n";
  }
  os << "structural checks " << (a.structural_ok() ? "ok" : "FAILED") << "\n";
  return os.str();
}

std::string analysis_markdown(const AnalysisReport& a) {
  std::ostringstream os;
  os << "| field | value |\n|---|---|\n";
  os << "| structure | " << a.normalized << " |\n| betti |";
  for (auto b : a.betti) os << " " << b;
  os << " |\n| step | " << a.step << " |\n";
  if (a.m) {
    os << "| Pf | " << a.pf << " |\n| symplectic | " << (a.symplectic ? "yes" : "no") << " |\n";
    os << "| moduli | " << opt_text(a.moduli) << " |\n";
    os << "| h" << 2 * a.m - 2 << " | " << set_text(a.top2, ",") << " |\n";
    os << "| h" << 2 * a.m - 1 << " | " << set_text(a.top1, ",") << " |\n";
    os << "| flexible | " << (a.certificate ? "yes" : "no") << " |\n";
  }
  return os.str();
}

std::string analysis_csv(const AnalysisReport& a) {
  std::ostringstream os;
  os << "b1,b2,s,h_top2,h_top1,moduli,flexible,structure\n";
  os << (a.betti.size() > 1 ? a.betti[1] : 0) << "," << (a.betti.size() > 2 ? a.betti[2] : 0) << "," << a.step
     << "," << set_text(a.top2, ";") << "," << set_text(a.top1, ";") << "," << opt_text(a.moduli) << ","
     << (a.certificate ? "true" : "false") << "," << csv_quote(a.normalized) << "\n";
  return os.str();
}

std::string vec_text(const std::vector<std::size_t>& v) {
  std::string out;
  for (auto x : v) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

}  // namespace

Format parse_format(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "md" || s == "markdown") return Format::Markdown;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (s == "text" || s == "txt") return Format::Text;
  fail(ErrorKind::InvalidArgument, "unknown format '" + name + "'");
}

std::string emit(const VerifyReport& r, Format format) {
  switch (format) {
    case Format::Markdown:
      return verify_markdown(r);
    case Format::Csv:
      return verify_csv(r);
    case Format::Text:
      return verify_text(r);
    case Format::Json: {
      ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["seed"] = r.seed;
      ordered_json rows = ordered_json::array();
      for (const auto& e : r.entries) rows.push_back(entry_json(e));
      j["entries"] = rows;
      ordered_json four = ordered_json::array();
      for (const auto& f : r.four_dim)
        four.push_back({{"name", f.entry.name},
                        {"structure", f.entry.structure},
                        {"b1", f.b1},
                        {"h3", f.h3},
                        {"oracle_ok", f.oracle_ok},
                        {"matches", f.matches}});
      j["four_dim"] = four;
      j["kodaira_thurston"] = {{"im_l", r.kt.im_l}, {"cup_image", r.kt.cup_image}, {"h3_constant", r.kt.h3_constant}};
      j["flexible"] = r.flexible;
      j["exactly_five_flexible"] = r.exactly_five_flexible;
      j["table_match"] = r.table_match();
      j["all_match"] = r.all_match();
      return j.dump(2) + "\n";
    }
  }
  fail(ErrorKind::InvalidArgument, "unknown format");
}

std::string emit(const AnalysisReport& a, Format format) {
  switch (format) {
    case Format::Markdown:
      return analysis_markdown(a);
    case Format::Csv:
      return analysis_csv(a);
    case Format::Text:
      return analysis_text(a);
    case Format::Json: {
      ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j.update(analysis_json(a));
      return j.dump(2) + "\n";
    }
  }
  fail(ErrorKind::InvalidArgument, "unknown format");
}

std::string emit_harmonic(const FixedSymplecticForm& f, const SymplecticFamily& family, const Vector& point,
                          Format format) {
  const OperatorTable ops = build_operators(f);
  const HarmonicProfile hp = harmonic_profile(f, ops, family.ring);
  const IdentityReport ids = identity_suite(f, ops, hp, family.ring);
  const auto betti = family.ring.betti_numbers();

  if (format == Format::Json) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["structure"] = to_string(f.g.spec());
    j["omega"] = to_string(f.omega);
    j["point"] = point_json(point);
    j["betti"] = betti;
    j["dim_hr"] = hp.dim_hr;
    j["h"] = hp.h;
    j["h_star"] = hp.h_star;
    j["h_delta"] = hp.h_delta;
    ordered_json checks = ordered_json::array();
    for (const auto& c : ids.checks)
      checks.push_back({{"name", c.name}, {"degree", c.degree}, {"ok", c.ok}, {"detail", c.detail}});
    j["identities"] = checks;
    j["identities_ok"] = ids.ok();
    return j.dump(2) + "\n";
  }
  if (format == Format::Csv) {
    std::ostringstream os;
    os << "k,b,dim_hr,h,h_star,h_delta\n";
    for (std::size_t k = 0; k < hp.h.size(); ++k)
      os << k << "," << betti[k] << "," << hp.dim_hr[k] << "," << hp.h[k] << "," << hp.h_star[k] << ","
         << hp.h_delta[k] << "\n";
    return os.str();
  }
  std::ostringstream os;
  os << "structure " << to_string(f.g.spec()) << "\nomega " << to_string(f.omega) << "\n";
  if (format == Format::Markdown) {
    os << "\n| k | b | dim hr | h | h* | h_delta |\n|---|---|---|---|---|---|\n";
    for (std::size_t k = 0; k < hp.h.size(); ++k)
      os << "| " << k << " | " << betti[k] << " | " << hp.dim_hr[k] << " | " << hp.h[k] << " | " << hp.h_star[k]
         << " | " << hp.h_delta[k] << " |\n";
  } else {
    os << "b       " << vec_text(betti) << "\n";
    os << "dim hr  " << vec_text(hp.dim_hr) << "\n";
    os << "h       " << vec_text(hp.h) << "\n";
    os << "h*      " << vec_text(hp.h_star) << "\n";
    os << "h_delta " << vec_text(hp.h_delta) << "\n";
  }
  std::size_t passed = 0;
  for (const auto& c : ids.checks) passed += c.ok;
  os << "identities " << passed << "/" << ids.checks.size() << " passed\n";
  if (!ids.ok()) os << "first failure: " << ids.first_failure() << "\n";
  return os.str();
}

std::string emit_product(const SymplecticFamily& f1, const Vector& p1, const SymplecticFamily& f2,
                         const Vector& p2, Format format) {
  const ProductBetti pb = product_harmonic_betti(f1, p1, f2, p2);
  const ProductStarReport ps = product_star_check(invert_omega(f1.ring.algebra(), f1.omega_at(p1)),
                                                  invert_omega(f2.ring.algebra(), f2.omega_at(p2)));
  const int top = 2 * (f1.m + f2.m);
  if (format == Format::Json) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["first"] = to_string(f1.ring.algebra().spec());
    j["second"] = to_string(f2.ring.algebra().spec());
    j["dimension"] = top;
    j["direct"] = {{"h_top1", pb.direct_top1}, {"h_top2", pb.direct_top2}};
    j["formula"] = {{"h_top1", pb.formula_top1}, {"h_top2", pb.formula_top2}};
    j["agrees"] = pb.agrees();
    j["star_ok"] = ps.star_ok;
    j["inclusion_ok"] = ps.inclusion_ok;
    j["betti_bound_ok"] = ps.betti_bound_ok;
    j["h_sum"] = ps.h_sum;
    j["h_bound"] = ps.h_bound;
    j["detail"] = ps.detail;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << to_string(f1.ring.algebra().spec()) << " + " << to_string(f2.ring.algebra().spec()) << "\n";
  os << "h" << top - 1 << ": direct " << pb.direct_top1 << ", formula " << pb.formula_top1 << "\n";
  os << "h" << top - 2 << ": direct " << pb.direct_top2 << ", formula " << pb.formula_top2 << "\n";
  os << "h of sum      " << vec_text(ps.h_sum) << "\n";
  os << "sum h_p h_q   " << vec_text(ps.h_bound) << "\n";
  os << "star product " << (ps.star_ok ? "ok" : "FAILED") << ", harmonic inclusion "
     << (ps.inclusion_ok ? "ok" : "FAILED") << ", bound " << (ps.betti_bound_ok ? "ok" : "FAILED") << "\n";
  if (!ps.detail.empty()) os << ps.detail << "\n";
  return os.str();
}

}  // namespace nilflex
