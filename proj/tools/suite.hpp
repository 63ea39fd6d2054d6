#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpdact/structures.hpp"

namespace gpdact::cli {

struct SuiteOptions {
  /// Groups to iterate over; empty means the whole catalog.
  std::vector<std::string> groups;
  std::uint64_t seed = 1;
};

/// The quick group set used by `gpdact suite` without --catalog.
std::vector<std::string> quick_groups();

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;
  double ms = 0;

  bool pass() const { return !checks.empty() && all_pass(checks); }
};

using CriterionFn = CriterionResult (*)(const SuiteOptions&);

CriterionResult topological_axioms(const SuiteOptions& opt);
CriterionResult bubble_counts(const SuiteOptions& opt);
CriterionResult controlled_operations(const SuiteOptions& opt);
CriterionResult complementarity(const SuiteOptions& opt);
CriterionResult communication(const SuiteOptions& opt);
CriterionResult encryption(const SuiteOptions& opt);
CriterionResult dense_coding(const SuiteOptions& opt);
CriterionResult quantization(const SuiteOptions& opt);
CriterionResult mub_and_teleportation(const SuiteOptions& opt);
CriterionResult decoherence(const SuiteOptions& opt);
CriterionResult mutation_sensitivity(const SuiteOptions& opt);

/// All eleven, in order.
const std::vector<CriterionFn>& criteria();
std::vector<CriterionResult> run_suite(const SuiteOptions& opt);

}  // namespace gpdact::cli
