#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gkz/gevrey.hpp"
#include "gkz/problem.hpp"

namespace gkz {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string command;
  nlohmann::ordered_json body;
  /// Coefficient-growth rows for CSV output.
  std::optional<std::vector<GrowthRow>> growth;
  std::vector<Check> checks;

  bool empty() const { return body.is_null() && !growth && checks.empty(); }
  bool all_passed() const;
};

enum class Format { Json, Csv, Text };
Format parse_format(const std::string& name);

/// Deterministic serialization. An empty report is "{}", a header-only CSV,
/// or "no results".
std::string emit_report(const Report& report, Format format);

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"basis", "gevrey",    "slope", "recurrence",
                                              "ext",   "monodromy", "verify"};
  return names;
}

/// Throws InvalidArgument for an unknown command; callee errors are rethrown
/// with the command name prefixed.
Report run_command(const ProblemSpec& spec, const std::string& command);

}  // namespace gkz
