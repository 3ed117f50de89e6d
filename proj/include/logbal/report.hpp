#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "logbal/analysis.hpp"
#include "logbal/certify.hpp"

namespace logbal {

std::string tool_version();

/// Schema: {tool_version, input, verdict, certificates[], failures[], terms_prefix[]}.
/// Every rational is a string "p" or "p/q".
std::string report_to_json(const Report& rep, const std::string& source, int indent = 2);
std::string report_to_text(const Report& rep, const std::string& source);

std::string classification_to_text(const Classification& c, const Prop1Report* prop1 = nullptr);
std::string classification_to_json(const Classification& c, const Prop1Report* prop1 = nullptr, int indent = 2);

struct ReplayResult {
  bool ok = true;
  std::size_t tails_checked = 0;
  std::size_t base_cases_checked = 0;
  std::vector<std::string> problems;
};

/// Re-checks a JSON report: every recorded tail inequality through
/// poly_tail_nonneg, every base case against terms recomputed from the
/// recorded recurrence text.
ReplayResult replay_report_json(std::string_view json_text);

}  // namespace logbal
