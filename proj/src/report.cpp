#include "sip/report.hpp"

#include <sstream>

#include <json.hpp>

namespace sip {

CheckResult& Report::check(const std::string& name) {
  for (auto& c : checks)
    if (c.name == name) return c;
  checks.push_back(CheckResult{name, 0, 0, std::nullopt});
  return checks.back();
}

const CheckResult* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void Report::merge(const Report& other) {
  for (const auto& o : other.checks) {
    CheckResult& c = check(o.name);
    c.instances += o.instances;
    c.failures += o.failures;
    if (!c.first_counterexample && o.first_counterexample) c.first_counterexample = o.first_counterexample;
  }
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

bool Report::pass() const {
  for (const auto& c : checks)
    if (c.failures) return false;
  return true;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["alpha"] = alpha;
  j["degree"] = degree;
  j["seed"] = seed;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["instances"] = c.instances;
    e["failures"] = c.failures;
    e["firstCounterexample"] =
        c.first_counterexample ? nlohmann::ordered_json(*c.first_counterexample) : nullptr;
    j["checks"].push_back(std::move(e));
  }
  j["pass"] = pass();
  return j.dump(2);
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "command: " << command << "\n"
     << "alpha: " << alpha << "\n"
     << "degree: " << degree << "\n"
     << "seed: " << seed << "\n";
  for (const auto& c : checks) {
    os << "check: " << c.name << " instances=" << c.instances << " failures=" << c.failures;
    if (c.first_counterexample) os << " firstCounterexample=" << *c.first_counterexample;
    os << "\n";
  }
  for (const auto& n : notes) os << "note: " << n << "\n";
  os << "pass: " << (pass() ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace sip
