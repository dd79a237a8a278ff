#include "nilflex/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cctype>
#include <thread>

#include "nilflex/sampler.hpp"

namespace nilflex {

namespace {

using Set = std::set<std::size_t>;

CatalogEntry row(int index, int b1, int b2, int six_minus_s, std::string structure, std::string reducible,
                 Set h4, Set h5, std::optional<std::size_t> moduli) {
  CatalogEntry e;
  e.index = index;
  e.structure = std::move(structure);
  e.b1 = b1;
  e.b2 = b2;
  e.six_minus_s = six_minus_s;
  e.reducible = std::move(reducible);
  e.symplectic = !h4.empty();
  e.h4 = std::move(h4);
  e.h5 = std::move(h5);
  e.moduli = moduli;
  return e;
}

CatalogEntry dash(int index, int b1, int b2, int six_minus_s, std::string structure, std::string reducible = "") {
  return row(index, b1, b2, six_minus_s, std::move(structure), std::move(reducible), {}, {}, std::nullopt);
}

std::vector<CatalogEntry> make_catalog() {
  std::vector<CatalogEntry> c = {
      dash(1, 2, 2, 1, "(0,0,12,13,14+23,34+52)"),
      dash(2, 2, 2, 1, "(0,0,12,13,14,34+52)"),
      row(3, 2, 3, 1, "(0,0,12,13,14,15)", "", {3}, {0}, 7),
      row(4, 2, 3, 1, "(0,0,12,13,14+23,24+15)", "", {2}, {0}, 7),
      row(5, 2, 3, 1, "(0,0,12,13,14,23+15)", "", {2}, {0}, 7),
      row(6, 2, 4, 2, "(0,0,12,13,23,14)", "", {4}, {0}, 8),
      row(7, 2, 4, 2, "(0,0,12,13,23,14-25)", "", {2, 3, 4}, {0}, 8),
      row(8, 2, 4, 2, "(0,0,12,13,23,14+25)", "", {4}, {0}, 8),
      row(9, 3, 4, 2, "(0,0,0,12,14-23,15+34)", "", {2}, {0}, 7),
      row(10, 3, 5, 2, "(0,0,0,12,14,15+23)", "", {4}, {2}, 8),
      row(11, 3, 5, 2, "(0,0,0,12,14,15+23+24)", "", {3, 4}, {0, 2}, 8),
      row(12, 3, 5, 2, "(0,0,0,12,14,15+24)", "1+5", {4}, {2}, 8),
      row(13, 3, 5, 2, "(0,0,0,12,14,15)", "1+5", {4}, {2}, 8),
      dash(14, 3, 5, 3, "(0,0,0,12,13,14+35)"),
      dash(15, 3, 5, 3, "(0,0,0,12,23,14+35)"),
      dash(16, 3, 5, 3, "(0,0,0,12,23,14-35)"),
      dash(17, 3, 5, 3, "(0,0,0,12,14,24)", "1+5"),
      row(18, 3, 5, 3, "(0,0,0,12,13+42,14+23)", "", {3}, {0}, 8),
      row(19, 3, 5, 3, "(0,0,0,12,14,13+42)", "", {3}, {0}, 8),
      row(20, 3, 5, 3, "(0,0,0,12,13+14,24)", "", {2, 3}, {0}, 8),
      row(21, 3, 6, 3, "(0,0,0,12,13,14+23)", "", {3}, {0}, 9),
      row(22, 3, 6, 3, "(0,0,0,12,13,24)", "", {5}, {0}, 9),
      row(23, 3, 6, 3, "(0,0,0,12,13,14)", "", {4}, {0}, 9),
      row(24, 3, 8, 4, "(0,0,0,12,13,23)", "", {7, 8}, {0}, 9),
      dash(25, 4, 6, 3, "(0,0,0,0,12,15+34)"),
      row(26, 4, 7, 3, "(0,0,0,0,12,15)", "1+1+4", {3}, {2}, 9),
      row(27, 4, 7, 3, "(0,0,0,0,12,14+25)", "1+5", {3}, {2}, 9),
      row(28, 4, 8, 4, "(0,0,0,0,13+42,14+23)", "", {7}, {2}, 10),
      row(29, 4, 8, 4, "(0,0,0,0,12,14+23)", "", {6}, {2}, 10),
      row(30, 4, 8, 4, "(0,0,0,0,12,34)", "3+3", {7}, {2}, 10),
      row(31, 4, 9, 4, "(0,0,0,0,12,13)", "1+5", {7, 8}, {2}, 11),
      dash(32, 5, 9, 4, "(0,0,0,0,0,12+34)", "1+5"),
      row(33, 5, 11, 4, "(0,0,0,0,0,12)", "1+1+1+3", {9}, {4}, 12),
      row(34, 6, 15, 5, "(0,0,0,0,0,0)", "1+1+1+1+1+1", {15}, {6}, 15),
  };

  auto& case1 = c[6];
  case1.h2_basis = {"14", "15+24", "26-34", "16-35"};
  case1.pf = "ACD-B(C^2+D^2)";
  case1.strata = {{"C=D", {"C-D"}, 3, 0}, {"C=D, A=-2B", {"C-D", "A+2B"}, 2, 0},
                  {"C=-D", {"C+D"}, 3, 0}, {"C=-D, A=2B", {"C+D", "A-2B"}, 2, 0}};

  auto& case2 = c[10];
  case2.h2_basis = {"13", "15", "23", "16+25-34", "26-45"};
  case2.pf = "AE^2+BDE-CDE-D^3";
  case2.strata = {{"E=0", {"E"}, 3, 0}};

  auto& case3 = c[19];
  case3.h2_basis = {"13", "15", "23", "16+25+34", "26"};
  case3.pf = "D(BE-D^2)";
  case3.strata = {{"EB+3D^2=0", {"EB+3D^2"}, 2, 0}};

  auto& case4 = c[23];
  case4.h2_basis = {"14", "15", "16+25", "16-34", "24", "26", "35", "36"};
  case4.pf = "ACH-AFG-BDF-BEH+DC^2+CEG+CD^2+DEG";
  case4.strata = {{"C^2+CD+D^2-BF-EG+AH=0", {"C^2+CD+D^2-BF-EG+AH"}, 7, 0}};

  auto& case5 = c[30];
  case5.h2_basis = {"14", "15", "16", "23", "24", "25", "34", "26+35", "36"};
  case5.pf = "-AFI+H^2A+BEI-BGH-CEH+CFG";
  case5.strata = {{"H^2-FI=0", {"H^2-FI"}, 7, 2}};
  return c;
}

std::string normalized(const std::string& structure) { return to_string(parse_spec(structure)); }

std::string join(const Set& s) {
  std::string out;
  for (auto v : s) out += (out.empty() ? "" : ",") + std::to_string(v);
  return out;
}

}  // namespace

std::uint64_t default_seed() {
  const char* env = std::getenv("NILFLEX_SEED");
  if (!env || !*env) return kDefaultSeed;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used, 0);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidArgument, std::string("invalid NILFLEX_SEED '") + env + "'");
  }
}

const std::vector<CatalogEntry>& six_dim_catalog() {
  static const std::vector<CatalogEntry> catalog = make_catalog();
  return catalog;
}

const std::vector<FourDimEntry>& four_dim_catalog() {
  static const std::vector<FourDimEntry> catalog = {
      {"filiform", "(0,0,12,13)", 2, 0, "14+23"},
      {"Kodaira-Thurston", "(0,0,12,0)", 3, 2, "14+23"},
      {"torus", "(0,0,0,0)", 4, 4, "12+34"},
  };
  return catalog;
}

SymplecticFamily catalog_family(const NilpotentLieAlgebra& g) {
  const CohomologyRing ring(g);
  const std::string key = to_string(g.spec());
  for (const auto& e : six_dim_catalog()) {
    if (e.h2_basis.empty() || normalized(e.structure) != key) continue;
    std::vector<QForm> reps;
    for (const auto& b : e.h2_basis) reps.push_back(parse_form(b, g.dim()));
    return build_family(ring.rebased(2, reps));
  }
  return build_family(ring);
}

bool AnalysisReport::oracle_ok() const {
  return std::all_of(oracle.begin(), oracle.end(),
                     [](const OracleCheck& o) { return o.agrees && o.identities_ok && o.low_degrees_ok; });
}

namespace {

OracleCheck oracle_at(const SymplecticFamily& family, const Vector& p) {
  const auto& g = family.ring.algebra();
  const int m = family.m;
  OracleCheck oc;
  oc.point = p;
  const RankBetti rb = harmonic_betti_via_rank(family, p);
  oc.rank_top1 = rb.h_top1;
  oc.rank_top2 = rb.h_top2;
  oc.lefschetz_type = rb.lefschetz_type;

  const FixedSymplecticForm f = invert_omega(g, family.omega_at(p));
  const OperatorTable ops = build_operators(f);
  const HarmonicProfile hp = harmonic_profile(f, ops, family.ring);
  const IdentityReport ids = identity_suite(f, ops, hp, family.ring);
  oc.h = hp.h;
  oc.identities_ok = ids.ok();
  if (!oc.identities_ok) oc.failure = ids.first_failure();
  oc.agrees = hp.h[2 * m - 1] == rb.h_top1 && hp.h[2 * m - 2] == rb.h_top2;
  // Under Lefschetz type the middle-low degree is fully harmonic as well.
  if (rb.h_top3) oc.agrees = oc.agrees && hp.h[2 * m - 3] == *rb.h_top3 && hp.h[3] == family.ring.betti(3);
  if (!oc.agrees && oc.failure.empty()) oc.failure = "oracle and rank formula differ";
  oc.low_degrees_ok = true;
  for (int k = 0; k <= std::min(2, 2 * m); ++k)
    oc.low_degrees_ok = oc.low_degrees_ok && hp.h[k] == family.ring.betti(k);
  if (!oc.low_degrees_ok && oc.failure.empty()) oc.failure = "h_k != b_k in degree <= 2";
  return oc;
}

}  // namespace

AnalysisReport analyze(const std::string& structure, const AnalyzeOptions& options) {
  AnalysisReport r;
  r.structure = structure;
  const NilpotentLieAlgebra g = NilpotentLieAlgebra::parse(structure);
  r.normalized = to_string(g.spec());
  r.step = g.step_length();
  const int n = g.dim();

  const SymplecticFamily family = n % 2 == 0 ? catalog_family(g) : SymplecticFamily{CohomologyRing(g), 0, {}, {}, {}};
  const CohomologyRing& ring = family.ring;
  r.betti = ring.betti_numbers();
  if (n == 6) r.b3_relation_ok = r.betti[3] == 2 * (r.betti[2] - r.betti[1] + 1);
  for (int k = 0; k <= n; ++k) r.poincare_ok = r.poincare_ok && rank(pairing_matrix(ring, k)) == ring.betti(k);
  if (n % 2) return r;

  r.m = family.m;
  r.parameters = family.names;
  for (const auto& b : ring.basis(2)) r.h2_basis.push_back(to_string(b));
  r.pf_poly = family.pf;
  r.pf = to_string(family.pf, family.names);
  r.symplectic = family.admits_symplectic();
  if (!r.symplectic) return r;

  long euler = 0;
  for (int k = 0; k <= n; ++k) euler += (k % 2 ? -1 : 1) * static_cast<long>(r.betti[k]);
  r.euler_ok = euler == 0;
  r.moduli = moduli_dim(family);

  std::vector<NamedStratum> named;
  for (const auto& s : options.strata) named.push_back(make_stratum(family, s.label, s.conditions));
  r.observations = observe_ranks(family, named, options.seed, options.random_points, options.lattice_draws);

  const int m = family.m;
  r.generic_top1 = generic_rank(lefschetz_matrix(family, 1), family, derive_seed(options.seed, "generic1")).rank;
  r.generic_top2 = m >= 2 ? generic_rank(lefschetz_matrix(family, 2), family, derive_seed(options.seed, "generic2")).rank
                          : ring.betti(0);
  for (const auto& o : r.observations) {
    r.top1.insert(o.h_top1);
    r.top2.insert(o.h_top2);
    r.semicontinuity_ok = r.semicontinuity_ok && o.h_top1 <= *r.generic_top1 && o.h_top2 <= *r.generic_top2;
    r.h_top1_even = r.h_top1_even && o.h_top1 % 2 == 0;
    const CohomClass w = ring.class_of(family.omega_at(o.point));
    for (int k = 0; 2 * k + 1 <= m; ++k) r.rho_even = r.rho_even && rho_form(ring, w, k).rank % 2 == 0;
  }

  for (const auto& s : options.strata) {
    StratumResult sr{s.label, 0, 0, {}, true};
    for (const auto& o : r.observations) {
      if (o.label != s.label) continue;
      if (sr.witness.empty() || o.h_top2 > sr.top2) {
        sr.top2 = o.h_top2;
        sr.witness = o.point;
      }
      sr.top1 = std::max(sr.top1, o.h_top1);
    }
    sr.matches = (!s.h4 || *s.h4 == sr.top2) && (!s.h5 || *s.h5 == sr.top1);
    r.strata.push_back(std::move(sr));
  }

  if (auto cert = flexibility_certificate(r.observations, m)) {
    const bool ok = segment_rank_check(family, cert->point0, cert->point1, cert->degree);
    r.certificate = CertificateReport{*cert, ok};
  }

  // Oracle points: the certificate's two points when there is one, then
  // random observations.
  std::vector<Vector> pts;
  if (r.certificate) {
    pts.push_back(r.certificate->certificate.point0);
    pts.push_back(r.certificate->certificate.point1);
  }
  for (const auto& o : r.observations) {
    if (pts.size() >= std::max<std::size_t>(options.oracle_points, r.certificate ? 2 : 0)) break;
    if (o.label == "random") pts.push_back(o.point);
  }
  for (const auto& p : pts) r.oracle.push_back(oracle_at(family, p));
  return r;
}

EntryReport run_entry(const CatalogEntry& e, std::uint64_t seed) {
  EntryReport rep;
  rep.entry = e;
  AnalyzeOptions opt;
  opt.seed = derive_seed(seed, e.structure);
  opt.strata = e.strata;
  auto& mm = rep.mismatches;
  try {
    rep.analysis = analyze(e.structure, opt);
  } catch (const Error& err) {
    mm.push_back(std::string("error: ") + err.what());
    return rep;
  }
  const AnalysisReport& a = rep.analysis;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) mm.push_back(what);
  };
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) rep.failures.push_back(what);
  };
  expect(a.betti[1] == static_cast<std::size_t>(e.b1), "b1 " + std::to_string(a.betti[1]) + " != " + std::to_string(e.b1));
  expect(a.betti[2] == static_cast<std::size_t>(e.b2), "b2 " + std::to_string(a.betti[2]) + " != " + std::to_string(e.b2));
  expect(6 - a.step == e.six_minus_s, "6-s " + std::to_string(6 - a.step) + " != " + std::to_string(e.six_minus_s));
  check(normalized(a.normalized) == a.normalized, "structure string does not round-trip");
  expect(a.symplectic == e.symplectic, std::string("symplectic ") + (a.symplectic ? "yes" : "no") + " expected " +
                                           (e.symplectic ? "yes" : "no"));
  expect(a.moduli == e.moduli, "moduli " + (a.moduli ? std::to_string(*a.moduli) : std::string("-")) + " != " +
                                   (e.moduli ? std::to_string(*e.moduli) : std::string("-")));
  if (e.symplectic && a.symplectic) {
    expect(a.top2 == e.h4, "h4 {" + join(a.top2) + "} != {" + join(e.h4) + "}");
    expect(a.top1 == e.h5, "h5 {" + join(a.top1) + "} != {" + join(e.h5) + "}");
    expect(a.generic_top2 == *e.h4.rbegin(), "generic h4 is not the set maximum");
    expect(a.generic_top1 == *e.h5.rbegin(), "generic h5 is not the set maximum");
    expect(rep.flexible() == e.flexible(), rep.flexible() ? "unexpected flexibility certificate"
                                                          : "no flexibility certificate found");
    if (a.certificate) check(a.certificate->segment_ok, "segment rank check failed");
    for (const auto& s : a.strata) check(s.matches, "stratum " + s.label + " gives h4=" + std::to_string(s.top2) +
                                                         ", h5=" + std::to_string(s.top1));
    check(a.oracle.size() >= 2, "fewer than two oracle points");
    for (const auto& o : a.oracle)
      check(o.agrees && o.identities_ok && o.low_degrees_ok, "oracle: " + o.failure);
  }
  if (!e.pf.empty() && a.symplectic) {
    rep.pf_matches = proportional(a.pf_poly, parse_poly(e.pf, a.parameters).widened(a.parameters.size()));
    check(*rep.pf_matches, "Pf " + a.pf + " not proportional to " + e.pf);
  }
  check(a.euler_ok, "Euler characteristic nonzero");
  check(a.b3_relation_ok, "b3 != 2(b2-b1+1)");
  check(a.poincare_ok, "Poincare pairing singular");
  check(a.h_top1_even, "odd h5 observed");
  check(a.rho_even, "odd rho observed");
  check(a.semicontinuity_ok, "point rank exceeds generic rank");
  return rep;
}

FourDimReport run_four_dim(const FourDimEntry& e, std::uint64_t seed) {
  FourDimReport r;
  r.entry = e;
  AnalyzeOptions opt;
  opt.seed = derive_seed(seed, e.structure);
  const AnalysisReport a = analyze(e.structure, opt);
  r.b1 = a.betti[1];
  r.h3 = a.top1;
  r.oracle_ok = a.oracle_ok() && a.oracle.size() >= 2;

  const NilpotentLieAlgebra g = NilpotentLieAlgebra::parse(e.structure);
  const SymplecticFamily fam = catalog_family(g);
  const Vector p = parameters_of(fam, parse_form(e.omega, 4));
  const bool given_ok = fam.is_symplectic_at(p) && harmonic_betti_at(fam, p, 3) == e.h3;
  r.matches = r.b1 == static_cast<std::size_t>(e.b1) && r.h3 == Set{e.h3} && r.oracle_ok && given_ok &&
              a.structural_ok();
  return r;
}

KtCupReport kt_cup_report(std::uint64_t seed) {
  const auto& kt = four_dim_catalog()[1];
  const NilpotentLieAlgebra g = NilpotentLieAlgebra::parse(kt.structure);
  const CohomologyRing ring(g);
  const SymplecticFamily fam = build_family(ring);
  const Vector p = parameters_of(fam, parse_form(kt.omega, 4));
  KtCupReport r;
  r.im_l = rank_at(lefschetz_matrix(fam, 1), p);
  r.cup_image = cup_image_dim(ring, 1, 2);
  std::set<std::size_t> h3;
  for (const auto& q : symplectic_samples(fam, 12, derive_seed(seed, "kt")))
    h3.insert(harmonic_betti_at(fam, q, 3));
  h3.insert(harmonic_betti_at(fam, p, 3));
  r.h3_constant = h3.size() == 1;
  return r;
}

bool VerifyReport::table_match() const {
  for (const auto& e : entries)
    if (!e.table_matches()) return false;
  for (const auto& f : four_dim)
    if (f.b1 != static_cast<std::size_t>(f.entry.b1) || f.h3 != std::set<std::size_t>{f.entry.h3}) return false;
  return kt.im_l == 2 && kt.cup_image == 3 && kt.h3_constant && exactly_five_flexible && flexible_set_matches;
}

bool VerifyReport::all_match() const {
  for (const auto& e : entries)
    if (!e.failures.empty()) return false;
  for (const auto& f : four_dim)
    if (!f.matches) return false;
  return table_match();
}

VerifyReport verify_all(std::uint64_t seed, unsigned threads) {
  const auto& catalog = six_dim_catalog();
  VerifyReport rep;
  rep.seed = seed;
  rep.entries.resize(catalog.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(catalog.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < catalog.size();) rep.entries[i] = run_entry(catalog[i], seed);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  bool set_ok = true;
  for (const auto& e : rep.entries) {
    if (e.flexible()) rep.flexible.push_back(e.analysis.normalized);
    set_ok = set_ok && e.flexible() == e.entry.flexible();
  }
  rep.exactly_five_flexible = rep.flexible.size() == 5;
  rep.flexible_set_matches = set_ok;
  for (const auto& f : four_dim_catalog()) rep.four_dim.push_back(run_four_dim(f, seed));
  rep.kt = kt_cup_report(seed);
  return rep;
}

Vector parse_assignment(const std::string& text, std::span<const std::string> names) {
  Vector p(names.size());
  std::vector<bool> seen(names.size());
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) fail(ErrorKind::Parse, "expected NAME=VALUE, got '" + item + "'");
      const std::string name = item.substr(0, eq);
      const auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) fail(ErrorKind::InvalidArgument, "unknown parameter '" + name + "'");
      const auto idx = static_cast<std::size_t>(it - names.begin());
      if (seen[idx]) fail(ErrorKind::InvalidArgument, "parameter '" + name + "' given twice");
      seen[idx] = true;
      p[idx] = parse_rational(item.substr(eq + 1));
    }
    pos = end + 1;
  }
  return p;
}

}  // namespace nilflex
