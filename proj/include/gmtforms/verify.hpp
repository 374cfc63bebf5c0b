#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmtforms/spaces.hpp"

namespace gmtforms {

enum class CheckStatus { Pass, Fail, Skip };

std::string to_string(CheckStatus status);

// A reported value: an integer quantity, a truth value, or absent (skipped).
struct CheckValue {
  enum class Kind { None, Integer, Boolean };

  Kind kind = Kind::None;
  long integer = 0;
  bool boolean = false;

  static CheckValue none() { return {}; }
  static CheckValue of_int(long v) { return {Kind::Integer, v, false}; }
  static CheckValue of_bool(bool v) { return {Kind::Boolean, 0, v}; }

  bool operator==(const CheckValue& other) const = default;
  std::string to_string() const;
};

// One verified cell, or one facet of a cell when a suite checks several
// related quantities (the facet index is reported in the j column).
struct CheckResult {
  std::string check_id;
  std::optional<int> m, k, s, r, p, q, j;
  CheckValue computed;
  CheckValue expected;
  CheckStatus status = CheckStatus::Pass;
};

struct VerifyConfig {
  std::vector<std::string> suites;  // canonical names; empty means all
  std::optional<int> m_max;         // replaces each suite's default upper bound
  std::optional<int> k_max;
  unsigned long long seed = 0;
  int cases = 100;  // random cases per property target
  int threads = 0;  // 0 = hardware concurrency
};

struct Report {
  VerifyConfig config;
  long dimension_cap = 0;
  std::vector<CheckResult> results;

  long pass_count() const;
  long fail_count() const;
  long skip_count() const;
  bool all_passed() const { return fail_count() == 0; }
};

struct SuiteRanges {
  int m_min = 2;
  int m_max = 2;
  int k_min = 0;
  int k_max = 0;
};

struct SuiteInfo {
  std::string name;
  std::string description;
  SuiteRanges ranges;
};

// The fixed catalog of verification suites.
const std::vector<SuiteInfo>& suites();

// Maps a user-facing name or alias (case-insensitive) to a canonical suite
// name; empty result for unknown names.
std::optional<std::string> resolve_suite_name(const std::string& raw);

// Runs the named suites (all when the list is empty) over their default
// ranges, with upper bounds overridden by the config when set. Cells run in
// parallel; the report is ordered canonically and is byte-stable for a fixed
// seed and config.
Report run_suites(const VerifyConfig& config);
Report run_suite(const std::string& name, const VerifyConfig& config);

}  // namespace gmtforms
