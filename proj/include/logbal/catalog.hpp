#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logbal/certify.hpp"

namespace logbal {

enum class ExpectedProperty { log_balanced, not_log_balanced };
std::string_view to_string(ExpectedProperty p);

struct CatalogEntry {
  std::string name;
  Recurrence recurrence;
  /// Known quotient bounds; absent for the order-1 and counterexample entries.
  std::optional<QuotientBounds> expected_bounds;
  ExpectedProperty expected_property = ExpectedProperty::log_balanced;
  /// Known index from which the sequence is log-balanced.
  std::optional<Index> expected_holds_from;
  /// True when expected_holds_from refers to the re-indexed subsequence.
  bool holds_from_reindexed = false;
  /// Known index from which the determinant functions are nonnegative.
  std::optional<Index> expected_delta_from;
  bool has_oracle = true;
  std::string notes;
};

/// Throws LookupError for unknown names; legendre:<t> needs a rational t >= 1.
CatalogEntry catalog_get(std::string_view name);

/// Fixed entry names in alphabetical order (legendre appears as legendre:<t>).
std::vector<std::string> catalog_names();

/// Every fixed entry plus legendre:1, legendre:2 and legendre:7/2, sorted.
std::vector<std::string> catalog_all_names();

/// Independent computation of the n-th term, not using the recurrence.
Rational oracle_eval(std::string_view name, Index n);

}  // namespace logbal
