#pragma once

#include <string>
#include <vector>

namespace qfan {

struct Violation {
  std::string code;     // machine-readable, e.g. "StrongConvexityViolated"
  std::string message;  // human-readable, includes the witness
};

/**
 * Result of a validator. Violations fail validity; notes record flags that
 * do not (non-standard calibration, interpretation choices).
 */
struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<Violation> notes;

  bool ok() const { return violations.empty(); }
  void add(const std::string& code, const std::string& message) {
    violations.push_back({code, message});
  }
  void note(const std::string& code, const std::string& message) {
    notes.push_back({code, message});
  }
  void merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  }
  bool has(const std::string& code) const {
    for (const auto& v : violations)
      if (v.code == code) return true;
    return false;
  }
};

}  // namespace qfan
