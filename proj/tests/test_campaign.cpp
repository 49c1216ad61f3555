#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "apnforge/apn.hpp"
#include "apnforge/campaign.hpp"
#include "apnforge/checkpoint.hpp"

using namespace apnforge;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("apnforge_test_" + name);
  fs::remove(p);
  return p;
}

CampaignConfig small_binomial() {
  CampaignConfig c;
  c.kind = CampaignKind::Binomial;
  c.m_range = {3, 6};
  c.d_range = {3, 13};
  return c;
}

std::set<std::string> apn_set(const ojson& report) {
  std::set<std::string> s;
  for (const auto& r : report["units"])
    if (r["is_apn"].get<bool>())
      s.insert(std::to_string(r["m"].get<int>()) + "/" + std::to_string(r["d"].get<int>()) + "/" +
               std::to_string(r["a"].get<int>()));
  return s;
}

}  // namespace

TEST_CASE("config parsing and validation") {
  const ojson j = ojson::parse(R"({"kind": "deg6", "m_range": [3, 5], "threads": 2,
                                   "format": "csv", "field_polys": {"4": "19"}})");
  const CampaignConfig c = config_from_json(j);
  CHECK(c.kind == CampaignKind::Deg6);
  CHECK(c.m_range.lo == 3);
  CHECK(c.m_range.hi == 5);
  CHECK(c.format == ReportFormat::Csv);
  CHECK(c.field_polys.at(4) == 0x19);
  CHECK_NOTHROW(validate(c));

  CampaignConfig big = c;
  big.m_range = {4, 9};
  CHECK_THROWS_AS(validate(big), std::invalid_argument);
  big.allow_large = true;
  CHECK_NOTHROW(validate(big));
  big.m_range = {4, 26};
  CHECK_THROWS_AS(validate(big), std::invalid_argument);

  CampaignConfig bad_d = small_binomial();
  bad_d.d_range = {2, 5};
  CHECK_THROWS_AS(validate(bad_d), std::invalid_argument);
  CHECK_THROWS_AS(parse_kind("binomials"), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(ojson::parse(R"({"m_range": [1]})")), std::invalid_argument);
}

TEST_CASE("campaign id depends only on result-relevant settings") {
  CampaignConfig a = small_binomial(), b = small_binomial();
  b.threads = 7;
  b.output = "/tmp/x";
  b.format = ReportFormat::Csv;
  CHECK(campaign_id(a) == campaign_id(b));
  b.d_range.hi = 14;
  CHECK(campaign_id(a) != campaign_id(b));
  CampaignConfig c = small_binomial();
  c.field_polys[5] = 0x3b;
  CHECK(campaign_id(a) != campaign_id(c));
}

TEST_CASE("binomial campaign records and summary") {
  const CampaignOutcome out = run_campaign(small_binomial());
  REQUIRE(out.complete);
  const ojson& rep = out.report;
  CHECK(rep["schema"] == "apn-forge/1");
  CHECK(rep["kind"] == "binomial");
  // Every recorded verdict matches an independent DDT.
  for (const auto& r : rep["units"]) {
    const Field f(r["m"].get<int>());
    const FuncTable t = inverse_plus_g(f, SparsePoly::monomial(r["d"].get<std::uint64_t>(), r["a"].get<Elem>()));
    REQUIRE(r["is_apn"].get<bool>() == is_apn(f, t));
    REQUIRE(r["delta"].get<std::uint32_t>() == differential_uniformity(f, t, 1).delta);
  }
  // Units are in (m, d, a) order and skip power-of-two d.
  std::tuple<int, int, int> prev{0, 0, 0};
  for (const auto& r : rep["units"]) {
    const std::tuple<int, int, int> cur{r["m"].get<int>(), r["d"].get<int>(), r["a"].get<int>()};
    CHECK(prev < cur);
    CHECK(r["d"].get<int>() != 4);
    CHECK(r["d"].get<int>() != 8);
    prev = cur;
  }
  for (const auto& o : rep["summary"]["orbit_counts"]) CHECK(o["orbits"] == o["gcd_d1_q1"]);
  // m = 3 hits are listed but are not findings; there are none at m >= 4.
  for (const auto& h : rep["summary"]["apn_found"]) CHECK(h["m"].get<int>() == 3);
  CHECK(out.findings.empty());
  // x^6 + x^3 over GF(8): d = 3, a = 1 is recorded.
  bool seen = false;
  for (const auto& r : rep["units"])
    if (r["m"] == 3 && r["d"] == 3 && r["a"] == 1) seen = true;
  CHECK(seen);
}

TEST_CASE("degenerate exponents are labelled") {
  CampaignConfig c = small_binomial();
  c.m_range = {4, 4};
  c.d_range = {13, 17};
  const ojson rep = run_campaign(c).report;
  std::map<int, std::string> label;
  for (const auto& r : rep["units"]) label[r["d"].get<int>()] = r["degeneracy"].get<std::string>();
  CHECK(label.at(14) == "inverse-exponent");
  CHECK(label.at(15) == "constant-on-units");
  CHECK(label.at(17) == "power-of-two");  // 17 = 2 mod 15
  CHECK(label.at(13) == "none");
}

TEST_CASE("orbit pruning does not change the APN set") {
  CampaignConfig pruned = small_binomial();
  CampaignConfig full = small_binomial();
  full.prune_orbits = false;
  full.full_delta = false;
  const ojson a = run_campaign(pruned).report;
  const ojson b = run_campaign(full).report;
  // Pruned hits are representatives; the full set is the union of their orbits.
  std::set<std::string> from_full;
  for (const auto& s : apn_set(b)) from_full.insert(s);
  std::set<std::string> expanded;
  for (const auto& h : a["summary"]["apn_found"]) {
    const int m = h["m"].get<int>();
    const std::uint64_t d = h["d"].get<std::uint64_t>();
    const Field f(m);
    for (Elem u = 1; u < f.q(); ++u)
      expanded.insert(std::to_string(m) + "/" + std::to_string(d) + "/" +
                      std::to_string(f.mul(h["a"].get<Elem>(), f.pow(u, d + 1))));
  }
  CHECK(expanded == from_full);
}

TEST_CASE("deg6 campaign grid") {
  CampaignConfig c;
  c.kind = CampaignKind::Deg6;
  c.m_range = {3, 4};
  const CampaignOutcome out = run_campaign(c);
  const ojson& s = out.report["summary"];
  std::size_t m4 = 0;
  for (const auto& r : out.report["units"]) m4 += r["m"] == 4;
  CHECK(m4 == 511);
  CHECK(s["skipped_affine_g"] == 2);
  for (const auto& h : s["apn_found"]) {
    CHECK(h["m"] == 3);
    CHECK(h["delta"] == 2);
  }
  CHECK(out.findings.empty());
}

TEST_CASE("census records carry bounds and checks") {
  CampaignConfig c;
  c.kind = CampaignKind::SurfaceCensus;
  c.m_range = {2, 4};
  c.catalog = {"x^3", "x^5+x^3"};
  const CampaignOutcome out = run_campaign(c);
  CHECK(out.report["units"].size() == 6);
  for (const auto& r : out.report["units"]) {
    CHECK(r["checks"]["lw_ok"] == true);
    CHECK(r["checks"]["betti_ok"] == true);
    CHECK(r["projective_count"].get<std::uint64_t>() ==
          r["affine_count"].get<std::uint64_t>() + r["infinity_count"].get<std::uint64_t>());
  }
  CHECK(out.findings.empty());
}

TEST_CASE("default census catalog is seeded") {
  CampaignConfig c;
  c.kind = CampaignKind::SurfaceCensus;
  const auto a = census_catalog(c);
  CHECK(a.size() == 8);
  CHECK(a[0].to_string() == "x^3");
  CHECK(a[5].degree() == 9);
  CHECK(census_catalog(c) == a);
  c.seed += 1;
  CHECK_FALSE(census_catalog(c) == a);
  c.max_catalog_degree = 6;
  CHECK(census_catalog(c).size() == 4);
}

TEST_CASE("singular scan over GF(8)") {
  CampaignConfig c;
  c.kind = CampaignKind::SingularScan;
  c.m_range = {3, 3};
  const CampaignOutcome out = run_campaign(c);
  CHECK(out.report["summary"]["no_case"] == 0);
  CHECK(out.findings.empty());
  bool named = false;
  for (const auto& n : out.report["summary"]["named_points"]) {
    CHECK(n["has_1111"] == true);
    CHECK(n["has_1110"] == true);
    named = true;
  }
  CHECK(named);
}

TEST_CASE("checkpoint resume reproduces the report") {
  const fs::path ck = temp_file("resume.jsonl");
  CampaignConfig c;
  c.kind = CampaignKind::Deg6;
  c.m_range = {3, 4};
  const std::string clean = render_report(run_campaign(c).report, ReportFormat::Json);

  CampaignConfig part = c;
  part.checkpoint = ck.string();
  part.stop_after = 100;
  const CampaignOutcome first = run_campaign(part);
  CHECK_FALSE(first.complete);
  CHECK(first.units_run >= 100);
  CHECK(first.units_run < first.units_total);

  // Tear the last line as a crash mid-write would.
  const auto size = fs::file_size(ck);
  fs::resize_file(ck, size - 7);

  part.stop_after.reset();
  const CampaignOutcome second = run_campaign(part);
  REQUIRE(second.complete);
  CHECK(second.units_run + first.units_run == first.units_total + 1);
  CHECK(render_report(second.report, ReportFormat::Json) == clean);

  // A sealed checkpoint replays without recomputing.
  const CampaignOutcome third = run_campaign(part);
  CHECK(third.units_run == 0);
  CHECK(render_report(third.report, ReportFormat::Json) == clean);

  // Every unit key appears exactly once in the file.
  std::set<std::string> keys;
  std::size_t lines = 0;
  std::ifstream in(ck);
  for (std::string line; std::getline(in, line);) {
    const ojson j = ojson::parse(line);
    if (j.contains("key")) {
      ++lines;
      keys.insert(j["key"].get<std::string>());
    }
  }
  CHECK(lines == keys.size());
  CHECK(keys.size() == first.units_total);
  fs::remove(ck);
}

TEST_CASE("checkpoint from another campaign is refused") {
  const fs::path ck = temp_file("other.jsonl");
  CampaignConfig a = small_binomial();
  a.checkpoint = ck.string();
  run_campaign(a);
  CampaignConfig b = a;
  b.d_range.hi = 9;
  CHECK_THROWS_AS(run_campaign(b), std::runtime_error);
  fs::remove(ck);
}

TEST_CASE("checkpoint object") {
  const fs::path ck = temp_file("object.jsonl");
  {
    Checkpoint c(ck.string(), "abc");
    c.append({{"k1", ojson{{"v", 1}}}, {"k2", ojson{{"v", 2}}}});
    c.append({{"k1", ojson{{"v", 9}}}});  // duplicate key ignored
  }
  {
    Checkpoint c(ck.string(), "abc");
    CHECK(c.completed().size() == 2);
    CHECK(c.completed().at("k1")["v"] == 1);
    CHECK_FALSE(c.sealed());
    c.seal(2);
  }
  CHECK(Checkpoint(ck.string(), "abc").sealed());
  CHECK_THROWS_AS(Checkpoint(ck.string(), "abd"), std::runtime_error);
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  fs::remove(ck);
}

TEST_CASE("reports are thread-count independent") {
  CampaignConfig c = small_binomial();
  c.threads = 1;
  const std::string one = render_report(run_campaign(c).report, ReportFormat::Json);
  c.threads = 4;
  CHECK(render_report(run_campaign(c).report, ReportFormat::Json) == one);
}

TEST_CASE("csv rendering") {
  CampaignConfig c = small_binomial();
  c.m_range = {3, 3};
  c.d_range = {3, 3};
  const std::string csv = render_report(run_campaign(c).report, ReportFormat::Csv);
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "m,d,a,reduced_degree,degeneracy,is_apn,delta");
  CHECK(row.rfind("3,3,1,3,none,", 0) == 0);
}
