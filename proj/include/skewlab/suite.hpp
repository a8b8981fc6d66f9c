#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "skewlab/report.hpp"

namespace skewlab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SuiteConfig {
  std::string base = "s4";
  int n = 1;
  std::string t = "t1";  // number, t0, t1, or a multiple such as 1.7*t1
  std::string structure = "J1";
  double scale = 1.0;          // base metric scale
  double tol = 1e-9;           // structural identities
  double tolCmp = 1e-4;        // finite-difference comparisons
  std::vector<std::string> checks;  // id prefixes; a leading '-' excludes
  unsigned long long seed = 0;

  // requireBase also checks that n fits the chosen base.
  void validate(bool requireBase = true) const;
};

// Applies key=value lines ('#' starts a comment) on top of cfg.
void applyConfigFile(const std::string& path, SuiteConfig& cfg);
void applyConfigEntry(const std::string& key, const std::string& value, SuiteConfig& cfg);

// Resolves the textual t against t0 = 4(n+2)/s' and t1 = 2(n+2)/s'.
double resolveT(const std::string& text, double t0, double t1);

enum class SuiteMode { Full, Representation, Holonomy, Oracle };

struct CheckSpec {
  std::string id;
  std::string name;
  std::string citation;
};
const std::vector<CheckSpec>& checkCatalogue();

VerificationReport runSuite(const SuiteConfig& cfg, SuiteMode mode = SuiteMode::Full);

}  // namespace skewlab
