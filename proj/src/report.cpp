#include "skewlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

namespace skewlab {

namespace {

std::string number(double v) {
  if (!std::isfinite(v)) v = v > 0 ? std::numeric_limits<double>::max() : -std::numeric_limits<double>::max();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + "\"";
}

std::string value(const ParamValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return quote(*s);
  if (const auto* d = std::get_if<double>(&v)) return number(*d);
  return std::to_string(std::get<long long>(v));
}

// Writes an object whose members are already serialised; std::map keeps the keys sorted.
std::string object(const std::map<std::string, std::string>& members, const std::string& indent) {
  if (members.empty()) return "{}";
  std::string out = "{\n";
  std::size_t k = 0;
  for (const auto& [key, val] : members) {
    out += indent + "  " + quote(key) + ": " + val;
    out += (++k < members.size()) ? ",\n" : "\n";
  }
  return out + indent + "}";
}

std::string array(const std::vector<std::string>& items, const std::string& indent) {
  if (items.empty()) return "[]";
  std::string out = "[\n";
  for (std::size_t k = 0; k < items.size(); ++k) {
    out += indent + "  " + items[k];
    out += (k + 1 < items.size()) ? ",\n" : "\n";
  }
  return out + indent + "]";
}

}  // namespace

CheckResult makeCheck(std::string id, std::string name, std::string citation, double residual, double tolerance,
                      std::string comparison, std::string note) {
  CheckResult c;
  c.id = std::move(id);
  c.name = std::move(name);
  c.citation = std::move(citation);
  c.tolerance = tolerance;
  c.comparison = std::move(comparison);
  c.note = std::move(note);
  if (!std::isfinite(residual)) {
    c.residual = std::numeric_limits<double>::max();
    c.pass = false;
    if (c.note.empty()) c.note = "non-finite residual";
    return c;
  }
  c.residual = residual;
  c.pass = c.comparison == "ge" ? residual >= tolerance : residual <= tolerance;
  return c;
}

CheckResult makeSkipped(std::string id, std::string name, std::string citation, std::string reason) {
  CheckResult c;
  c.id = std::move(id);
  c.name = std::move(name);
  c.citation = std::move(citation);
  c.skipped = true;
  c.note = std::move(reason);
  return c;
}

void VerificationReport::finalize() {
  std::stable_sort(checks.begin(), checks.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  summary = {};
  for (const auto& c : checks) {
    if (c.skipped)
      ++summary.skipped;
    else if (c.pass)
      ++summary.passed;
    else
      ++summary.failed;
  }
}

std::string toCanonicalJson(const VerificationReport& report) {
  VerificationReport r = report;
  r.finalize();
  const std::string ind = "    ";
  std::vector<std::string> checks;
  for (const auto& c : r.checks) {
    std::map<std::string, std::string> m{{"citation", quote(c.citation)},
                                         {"comparison", quote(c.comparison)},
                                         {"id", quote(c.id)},
                                         {"name", quote(c.name)},
                                         {"note", quote(c.note)},
                                         {"pass", c.pass ? "true" : "false"},
                                         {"residual", number(c.residual)},
                                         {"skipped", c.skipped ? "true" : "false"},
                                         {"tolerance", number(c.tolerance)}};
    checks.push_back(object(m, ind));
  }
  std::map<std::string, std::string> params;
  for (const auto& [k, v] : r.params) params[k] = value(v);
  std::vector<std::string> errors;
  for (const auto& e : r.errors) errors.push_back(quote(e));
  std::map<std::string, std::string> summary{{"failed", std::to_string(r.summary.failed)},
                                             {"passed", std::to_string(r.summary.passed)},
                                             {"skipped", std::to_string(r.summary.skipped)}};
  std::map<std::string, std::string> top{{"checks", array(checks, "  ")},
                                         {"errors", array(errors, "  ")},
                                         {"params", object(params, "  ")},
                                         {"schemaVersion", std::to_string(r.schemaVersion)},
                                         {"summary", object(summary, "  ")},
                                         {"timestamp", quote(r.timestamp)},
                                         {"toolVersion", quote(r.toolVersion)}};
  return object(top, "") + "\n";
}

void emitReport(const VerificationReport& report, const std::string& path) {
  const std::string text = toCanonicalJson(report);
  if (path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open report file '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing report file '" + path + "'");
}

std::string reproducibleTimestamp() {
  std::time_t t = 0;
  if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(e, &end, 10);
    if (end != e && *end == '\0' && v >= 0) t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace skewlab
