#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sip {

/// A precondition of a verifier was violated by its caller.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CheckResult {
  std::string name;
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  std::optional<std::string> first_counterexample;
};

/// Outcome of a verification run: named checks with instance and failure
/// counts and the first counterexample of each.
struct Report {
  std::string command;
  unsigned alpha = 0;
  unsigned degree = 1;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  CheckResult& check(const std::string& name);
  const CheckResult* find(const std::string& name) const;
  /// Counts one instance of the named check; `describe` is called only for
  /// the first failure.
  template <class Describe>
  bool record(const std::string& name, bool ok, Describe&& describe) {
    CheckResult& c = check(name);
    ++c.instances;
    if (!ok) {
      ++c.failures;
      if (!c.first_counterexample) c.first_counterexample = describe();
    }
    return ok;
  }
  bool record(const std::string& name, bool ok) {
    return record(name, ok, [] { return std::string("(no detail)"); });
  }
  /// Folds another report's checks into this one.
  void merge(const Report& other);

  bool pass() const;
  std::string to_json() const;
  std::string to_text() const;
};

}  // namespace sip
