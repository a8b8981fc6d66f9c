#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace skewlab {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheckResult {
  std::string id;
  std::string name;
  std::string citation;
  double residual = 0.0;
  double tolerance = 0.0;
  // "le": pass iff residual <= tolerance; "ge": pass iff residual >= tolerance.
  std::string comparison = "le";
  bool pass = false;
  bool skipped = false;
  std::string note;
};

struct ReportSummary {
  int passed = 0;
  int failed = 0;
  int skipped = 0;
};

using ParamValue = std::variant<std::string, double, long long>;

struct VerificationReport {
  std::map<std::string, ParamValue> params;
  std::vector<CheckResult> checks;
  std::vector<std::string> errors;
  ReportSummary summary;
  std::string toolVersion = kToolVersion;
  std::string timestamp;
  int schemaVersion = kSchemaVersion;

  // Recomputes summary from the check list and orders checks by id.
  void finalize();
  bool allPassed() const { return summary.failed == 0 && errors.empty(); }
};

// Evaluates pass from residual, tolerance and comparison; non-finite residuals fail.
CheckResult makeCheck(std::string id, std::string name, std::string citation, double residual, double tolerance,
                      std::string comparison = "le", std::string note = {});
CheckResult makeSkipped(std::string id, std::string name, std::string citation, std::string reason);

// Canonical JSON: sorted keys, checks ordered by id, numbers with 17 significant digits.
std::string toCanonicalJson(const VerificationReport& report);
void emitReport(const VerificationReport& report, const std::string& path);

// SOURCE_DATE_EPOCH when set, otherwise the Unix epoch, so reports stay byte-reproducible.
std::string reproducibleTimestamp();

}  // namespace skewlab
