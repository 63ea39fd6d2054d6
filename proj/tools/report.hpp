#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpdact/structures.hpp"
#include "json.hpp"

namespace gpdact::cli {

struct Check {
  std::string name;
  bool pass = true;
  std::string witness;
  double timing_ms = 0;
};

/// Output record of every command. JSON layout (schema 1):
///   {"schema": 1, "command": ..., "inputs_digest": "fnv1a64:...",
///    "seed": n (randomized commands only), "status": "pass" | "fail",
///    "checks": [{"name", "pass", "witness"[, "timing_ms"]}], "details": {...}}
/// Checks are sorted by name; witnesses are kept on failures only and timings
/// only appear with `timing`.
struct Report {
  std::string command;
  std::string inputs_digest;
  std::optional<std::uint64_t> seed;
  std::vector<Check> checks;
  nlohmann::json details = nlohmann::json::object();

  bool pass() const;
  void add(const CheckResult& r, double timing_ms = 0);
  void add(std::string name, bool pass, std::string witness, double timing_ms = 0);
  void add_all(const std::vector<CheckResult>& rs, const std::string& prefix = {}, double timing_ms = 0);

  std::string to_json(bool timing = false) const;
  std::string to_text(bool timing = false) const;
};

/// 64-bit FNV-1a over the parts, separated by a zero byte.
std::string inputs_digest(const std::vector<std::string>& parts);

}  // namespace gpdact::cli
