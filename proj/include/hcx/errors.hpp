#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hcx {

// Malformed input: invalid permutation words, out-of-range indices, bad
// block structure.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested size exceeds the configured compute budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Outcome of a verification pass. A failed report carries the first few
// offending objects; `violationCount` keeps the full tally.
struct CheckReport {
  std::string name;
  bool ok = true;
  std::size_t checked = 0;
  std::size_t violationCount = 0;
  std::vector<std::string> violations;

  explicit CheckReport(std::string reportName = {}) : name(std::move(reportName)) {}

  void fail(std::string what) {
    ok = false;
    ++violationCount;
    if (violations.size() < kMaxRecorded) violations.push_back(std::move(what));
  }

  void merge(const CheckReport& other) {
    ok = ok && other.ok;
    checked += other.checked;
    violationCount += other.violationCount;
    for (const auto& v : other.violations) {
      if (violations.size() >= kMaxRecorded) break;
      violations.push_back(other.name + ": " + v);
    }
  }

  static constexpr std::size_t kMaxRecorded = 16;
};

}  // namespace hcx
