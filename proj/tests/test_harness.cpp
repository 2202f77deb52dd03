#include <sstream>

#include "doctest.h"
#include "test_support.hpp"
#include "torimass/harness.hpp"

using namespace torimass;
using namespace torimass::testing;

namespace {

std::string value_of(const CaseResult& r, const std::string& key) {
  for (const auto& [k, v] : r.values)
    if (k == key) return v;
  FAIL("missing key " << key);
  return {};
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("splitmix64 reference value") {
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(case_seed(1, 0) != case_seed(1, 1));
  CHECK(case_seed(1, 5) == case_seed(1, 5));
}

TEST_CASE("comparable pair generator") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 1 + seed % 3;
    GeneratorOptions opt;
    opt.degenerate = seed % 7 == 0;
    const auto p = generate_comparable_pair(n, 3 + seed % 4, 2 + seed % 2, seed, opt);
    CHECK(p.f.dim() == n);
    CHECK(contains(newton_polytope(p.f), newton_polytope(p.g)));
    CHECK(p.order == compare_singularity(p.f, p.g));
    if (opt.degenerate) {
      CHECK(total_mass(p.f) == 0);
      CHECK(total_mass(p.g) == 0);
    }
    const auto u0 = reference_function(p.f, p.g);
    CHECK(contains(newton_polytope(u0), newton_polytope(p.f)));
  }
  auto a = generate_comparable_pair(2, 5, 3, 42), b = generate_comparable_pair(2, 5, 3, 42);
  CHECK(a.f.pieces() == b.f.pieces());
  CHECK_THROWS_AS(generate_comparable_pair(4, 3, 2, 1), InvalidInput);
  CHECK_THROWS_AS(generate_comparable_pair(2, 2, 3, 1), InvalidInput);
}

TEST_CASE("domination triple generator") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 1 + seed % 3;
    const auto t = generate_domination_triple(n, seed, false);
    const auto pp = newton_polytope(t.phi);
    CHECK(volume(pp) > 0);
    CHECK(contains(pp, newton_polytope(t.psi)));
    CHECK(contains(pp, newton_polytope(t.rho)));
    // psi touches phi from below on the atoms of MA(phi)
    Q best = -1000;
    for (const auto& a : ma_measure(t.phi).atoms) best = std::max(best, Q(t.psi(a.location) - t.phi(a.location)));
    CHECK(best == 0);
  }
}

TEST_CASE("monotonicity_case examples") {
  auto abs_x = qfn(1, {{1, 0}, {-1, 0}});
  auto relu = qfn(1, {{0, 0}, {1, 0}});
  auto r = monotonicity_case(abs_x, relu);
  CHECK(r.pass);
  CHECK(value_of(r, "mass_f") == "2");
  CHECK(value_of(r, "mass_g") == "1");
  CHECK(value_of(r, "order") == "less-singular");

  auto bad = monotonicity_case(relu, abs_x);
  CHECK_FALSE(bad.pass);
  CHECK(bad.reason.find("precondition") != std::string::npos);

  // zero-volume polytopes: 0 >= 0
  auto flat = monotonicity_case(qfn(2, {{1, 0, 0}, {-1, 0, 0}}), qfn(2, {{1, 0, 1}}));
  CHECK(flat.pass);
  CHECK(value_of(flat, "mass_f") == "0");
}

TEST_CASE("comparison_case examples") {
  auto phi = qfn(1, {{1, 0}, {-1, 0}});
  auto psi = qfn(1, {{1, -1}, {-1, 1}});
  auto r = comparison_case(phi, psi);
  CHECK(r.pass);
  CHECK(value_of(r, "mass_psi_on_phi_lt_psi") == "0");
  CHECK(value_of(r, "mass_phi_on_phi_lt_psi") == "2");
  CHECK(value_of(r, "mass_max_eps1") == "2");
  CHECK(value_of(r, "mass_max_eps1_2") == "2");

  auto dr = comparison_case(convert_function<double>(phi), convert_function<double>(psi));
  CHECK(dr.pass);
  CHECK_FALSE(comparison_case(qfn(1, {{0, 0}, {1, 0}}), phi).pass);
}

TEST_CASE("domination_case examples") {
  auto phi = qfn(1, {{1, 0}, {-1, 0}});
  auto rho = qfn(1, {{0, 0}, {1, 0}});
  auto trivial = domination_case(phi, qfn(1, {{1, -1}, {-1, -1}}), rho);
  CHECK(trivial.pass);
  CHECK_FALSE(trivial.skipped);
  CHECK(value_of(trivial, "mass_rho_on_phi_lt_psi") == "0");

  // psi = |x - 1| - 1 stays below phi
  auto touching = domination_case(phi, qfn(1, {{1, -2}, {-1, 0}}), rho);
  CHECK(touching.pass);
  CHECK_FALSE(touching.skipped);

  auto skipped = domination_case(phi, qfn(1, {{1, -1}, {-1, 1}}), rho);
  CHECK(skipped.skipped);
  CHECK(skipped.pass);
  CHECK(!skipped.reason.empty());
}

TEST_CASE("keyprop_case and limit_case examples") {
  auto u = qfn(1, {{1, 0}, {-1, 0}});
  auto v = qfn(1, {{0, 0}, {1, 0}});
  auto k = keyprop_case(u, v, 1, 20000, 7, 0.02);
  CHECK(k.pass);
  CHECK(value_of(k, "rhs") == "3/2");
  CHECK(value_of(k, "normalization") == "toric-lebesgue");

  auto l = limit_case(u, v);
  CHECK(l.pass);
  CHECK(value_of(l, "error_N4") == "1/5");
  CHECK(value_of(l, "error_N64") == "1/65");
}

TEST_CASE("suites are deterministic and job-count independent") {
  for (const auto& suite : suite_names()) {
    SuiteConfig c;
    c.cases = suite == "keyprop" ? 3 : 12;
    c.samples = 5000;
    c.tol = 0.1;
    c.seed = 9;
    const auto a = run_suite(suite, c);
    const auto b = run_suite(suite, c);
    CHECK(report_body(a).dump() == report_body(b).dump());
    c.jobs = 4;
    CHECK(run_suite(suite, c) == a);
    CHECK(a.cases.size() == c.cases);
    c.seed = 10;
    if (suite != "keyprop") CHECK_FALSE(run_suite(suite, c) == a);
  }
  CHECK_THROWS_AS(run_suite("nope", SuiteConfig{}), InvalidInput);
}

TEST_CASE("suites pass on small configurations in both profiles") {
  for (Profile p : {Profile::kRational, Profile::kFloat}) {
    for (const char* suite : {"monotonicity", "comparison", "domination"}) {
      SuiteConfig c;
      c.cases = 15;
      c.profile = p;
      const auto r = run_suite(suite, c);
      CHECK_MESSAGE(r.pass(), suite << " " << to_string(p));
      CHECK(r.passed() + r.skipped() == r.cases.size());
    }
  }
}

TEST_CASE("report round trips and CSV agrees with JSON") {
  SuiteConfig c;
  c.cases = 6;
  const std::vector<VerificationReport> reports{run_suite("comparison", c), run_suite("domination", c)};
  for (const auto& r : reports) CHECK(report_from_body(report_body(r)) == r);

  Json meta{{"created_utc", "2000-01-01T00:00:00Z"}};
  const Json doc = report_document(reports, meta);
  CHECK(doc["schema"] == kSchema);
  CHECK(doc["metadata"] == meta);
  CHECK(reports_from_document(parse_json(doc.dump())) == reports);
  Json broken = doc;
  broken["schema"] = "other/9";
  CHECK_THROWS_AS(reports_from_document(broken), InvalidInput);
  CHECK_THROWS_AS(report_from_body(Json{{"suite", "x"}}), InvalidInput);

  std::istringstream csv(reports_to_csv(reports));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "suite,profile,seed,case,case_seed,label,pass,skipped,key,value");
  std::size_t rows = 0, value_rows = 0;
  while (std::getline(csv, line)) {
    const auto f = split_csv_line(line);
    REQUIRE(f.size() == 10);
    const auto& rep = f[0] == "comparison" ? reports[0] : reports[1];
    const auto& cr = rep.cases.at(std::stoul(f[3]));
    CHECK(std::to_string(cr.seed) == f[4]);
    CHECK(cr.label == f[5]);
    if (f[8] == "reason") {
      CHECK(cr.reason == f[9]);
    } else {
      CHECK(value_of(cr, f[8]) == f[9]);
      CHECK(doc["suites"][f[0] == "comparison" ? 0 : 1]["cases"][cr.index]["values"][f[8]] == f[9]);
      ++value_rows;
    }
    ++rows;
  }
  std::size_t expected = 0;
  for (const auto& r : reports)
    for (const auto& cr : r.cases) expected += cr.values.size();
  CHECK(value_rows == expected);
  CHECK(rows >= expected);
}
