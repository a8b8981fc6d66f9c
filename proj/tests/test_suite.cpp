#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "skewlab/suite.hpp"

using namespace skewlab;

namespace {

const CheckResult* find(const VerificationReport& r, const std::string& id) {
  for (const auto& c : r.checks)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("catalogue ids are unique, sorted and carry citations") {
  std::set<std::string> ids;
  std::string prev;
  for (const auto& c : checkCatalogue()) {
    CHECK(ids.insert(c.id).second);
    CHECK(prev < c.id);
    CHECK_FALSE(c.name.empty());
    CHECK_FALSE(c.citation.empty());
    prev = c.id;
  }
}

TEST_CASE("symbolic t resolution") {
  CHECK(resolveT("t0", 2.0, 1.0) == 2.0);
  CHECK(resolveT("t1", 2.0, 1.0) == 1.0);
  CHECK(resolveT("1.7*t1", 2.0, 1.0) == doctest::Approx(1.7));
  CHECK(resolveT("0.5t0", 2.0, 1.0) == doctest::Approx(1.0));
  CHECK(resolveT(" 0.25 ", 2.0, 1.0) == 0.25);
  CHECK_THROWS_AS(resolveT("t2", 2.0, 1.0), ConfigError);
  CHECK_THROWS_AS(resolveT("-1", 2.0, 1.0), ConfigError);
  CHECK_THROWS_AS(resolveT("0*t1", 2.0, 1.0), ConfigError);
}

TEST_CASE("configuration entries and files") {
  SuiteConfig cfg;
  applyConfigEntry("base", "hpn", cfg);
  applyConfigEntry("n", "2", cfg);
  applyConfigEntry("checks", "A, -A08", cfg);
  CHECK(cfg.n == 2);
  REQUIRE(cfg.checks.size() == 2);
  CHECK(cfg.checks[1] == "-A08");
  CHECK_THROWS_AS(applyConfigEntry("n", "1.5", cfg), ConfigError);
  CHECK_THROWS_AS(applyConfigEntry("colour", "red", cfg), ConfigError);
  CHECK_THROWS_AS(applyConfigEntry("tol", "abc", cfg), ConfigError);

  const std::string path = "suite_test.cfg";
  {
    std::ofstream f(path);
    f << "# comment\nbase = cp2\n\nt = 0.3  # trailing comment\nseed=9\n";
  }
  SuiteConfig fromFile;
  applyConfigFile(path, fromFile);
  CHECK(fromFile.base == "cp2");
  CHECK(fromFile.t == "0.3");
  CHECK(fromFile.seed == 9);
  {
    std::ofstream f(path);
    f << "no equals sign\n";
  }
  CHECK_THROWS_AS(applyConfigFile(path, fromFile), ConfigError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(applyConfigFile("does-not-exist.cfg", fromFile), ConfigError);
}

TEST_CASE("validation rejects inconsistent configurations") {
  SuiteConfig cfg;
  cfg.n = 2;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_NOTHROW(cfg.validate(false));
  cfg = SuiteConfig{};
  cfg.tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = SuiteConfig{};
  cfg.base = "torus";
  CHECK_THROWS_AS(runSuite(cfg), ConfigError);
  cfg = SuiteConfig{};
  cfg.structure = "J3";
  CHECK_THROWS_AS(runSuite(cfg), ConfigError);
}

TEST_CASE("default scenario passes every applicable check") {
  const VerificationReport r = runSuite(SuiteConfig{});
  CHECK(r.errors.empty());
  CHECK(r.summary.failed == 0);
  CHECK(r.summary.passed > 80);
  CHECK(r.allPassed());
  CHECK(std::get<double>(r.params.at("t")) == doctest::Approx(0.5));
}

TEST_CASE("away from t1 the parallel-torsion check fails and the general curvature relation holds") {
  SuiteConfig cfg;
  cfg.t = "1.7*t1";
  const VerificationReport r = runSuite(cfg);
  REQUIRE(find(r, "C11") != nullptr);
  CHECK_FALSE(find(r, "C11")->pass);
  CHECK(find(r, "D04")->pass);
  CHECK(find(r, "C05")->pass);
  CHECK(find(r, "D05")->skipped);
  CHECK(r.summary.failed == 1);
}

TEST_CASE("Kaehler branch at t0") {
  SuiteConfig cfg;
  cfg.t = "t0";
  const VerificationReport r = runSuite(cfg);
  CHECK(r.allPassed());
  CHECK(find(r, "C10")->pass);
  CHECK_FALSE(find(r, "C10")->skipped);
  CHECK(find(r, "E04")->pass);
}

TEST_CASE("check filters") {
  SuiteConfig cfg;
  cfg.checks = {"B", "-B1"};
  const VerificationReport r = runSuite(cfg);
  for (const auto& c : r.checks) {
    CHECK(c.id[0] == 'B');
    CHECK(c.id.rfind("B1", 0) != 0);
  }
  CHECK(r.checks.size() == 9);
}

TEST_CASE("the report is deterministic for a fixed seed") {
  SuiteConfig cfg;
  cfg.base = "hpn";
  cfg.n = 2;
  cfg.seed = 12345;
  CHECK(toCanonicalJson(runSuite(cfg)) == toCanonicalJson(runSuite(cfg)));
}

TEST_CASE("modes restrict the check groups") {
  SuiteConfig cfg;
  cfg.n = 2;
  const VerificationReport rep = runSuite(cfg, SuiteMode::Representation);
  CHECK(rep.allPassed());
  for (const auto& c : rep.checks) CHECK(c.id[0] == 'A');
  const VerificationReport orc = runSuite(SuiteConfig{}, SuiteMode::Oracle);
  CHECK(orc.allPassed());
  CHECK(orc.checks.size() == 12);
  SuiteConfig hol;
  hol.base = "hpn";
  const VerificationReport h = runSuite(hol, SuiteMode::Holonomy);
  CHECK(h.allPassed());
  for (const auto& c : h.checks) CHECK(c.id[0] == 'E');
}

TEST_CASE("the nearly Kaehler structure off t1 is reported, not thrown") {
  SuiteConfig cfg;
  cfg.structure = "J2";
  cfg.t = "1.3*t1";
  const VerificationReport r = runSuite(cfg);
  CHECK_FALSE(find(r, "C04")->pass);
  CHECK(find(r, "D01")->skipped);
  CHECK(r.errors.empty());
}
