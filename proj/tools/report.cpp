#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace gpdact::cli {

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::add(std::string name, bool pass, std::string witness, double timing_ms) {
  if (pass) witness.clear();
  else if (witness.empty()) witness = "failed without a recorded witness";
  checks.push_back({std::move(name), pass, std::move(witness), timing_ms});
}

void Report::add(const CheckResult& r, double timing_ms) { add(r.name, r.pass, r.witness, timing_ms); }

void Report::add_all(const std::vector<CheckResult>& rs, const std::string& prefix, double timing_ms) {
  for (const auto& r : rs) add(prefix + r.name, r.pass, r.witness, timing_ms);
}

namespace {

std::vector<Check> sorted(const std::vector<Check>& checks) {
  std::vector<Check> out = checks;
  std::stable_sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  return out;
}

}  // namespace

std::string Report::to_json(bool timing) const {
  nlohmann::json j;
  j["schema"] = 1;
  j["command"] = command;
  j["inputs_digest"] = inputs_digest;
  if (seed) j["seed"] = *seed;
  j["status"] = pass() ? "pass" : "fail";
  j["checks"] = nlohmann::json::array();
  for (const auto& c : sorted(checks)) {
    nlohmann::json e{{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}};
    if (timing) e["timing_ms"] = c.timing_ms;
    j["checks"].push_back(e);
  }
  j["details"] = details;
  return j.dump(2) + "\n";
}

std::string Report::to_text(bool timing) const {
  std::ostringstream out;
  out << command << "  [" << inputs_digest << "]";
  if (seed) out << "  seed " << *seed;
  out << "\n";
  for (const auto& c : sorted(checks)) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.witness.empty()) out << "  -- " << c.witness;
    if (timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "  (%.1f ms)", c.timing_ms);
      out << buf;
    }
    out << "\n";
  }
  if (!details.empty()) {
    for (const auto& [k, v] : details.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  out << "status: " << (pass() ? "pass" : "fail") << "\n";
  return out.str();
}

std::string inputs_digest(const std::vector<std::string>& parts) {
  std::uint64_t h = 14695981039346656037ull;
  for (const auto& p : parts) {
    for (unsigned char c : p) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gpdact::cli
