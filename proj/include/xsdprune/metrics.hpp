#pragma once

#include <xsdprune/schema_set.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xsdprune {

  /// Cardinalities of a schema set, in the row order of the usual size
  /// table: |T| |E| |A| |MG| |AG|, then the five relations.
  struct schema_metrics {
    std::size_t types = 0;
    std::size_t elements = 0;
    std::size_t attributes = 0;
    std::size_t model_groups = 0;
    std::size_t attribute_groups = 0;
    std::size_t is_of_type = 0;
    std::size_t reference = 0;
    std::size_t contains = 0;
    std::size_t is_derived_from = 0;
    std::size_t is_in_substitution_group = 0;

    std::size_t global_elements = 0;
    std::size_t inner_elements = 0;
    std::size_t global_attributes = 0;
    std::size_t inner_attributes = 0;
    std::size_t builtin_types = 0; ///< counted in `types` when included

    std::size_t total_c() const;
    std::size_t total_r() const;

    /// The twelve table values, Total_C and Total_R last.
    std::array<std::size_t, 12> values() const;

    bool operator==(const schema_metrics&) const = default;
  };

  inline constexpr std::array<std::string_view, 12> metric_labels = {
    "|T|",         "|E|",           "|A|",        "|MG|",
    "|AG|",        "|isOfType|",    "|reference|", "|contains|",
    "|isDerivedFrom|", "|isInSubstitutionGroup|", "Total_C", "Total_R"};

  /// With include_builtins false, built-in XSD types are left out of |T|
  /// (relations are counted as they are).
  schema_metrics
  compute_metrics(const schema_set& s, bool include_builtins = true);

  /// Metrics from the ten cardinalities (|T| ... |isInSubstitutionGroup|);
  /// the totals are derived.
  schema_metrics
  metrics_from_values(const std::array<std::size_t, 10>& values);

  struct metric_row {
    std::string label;
    std::size_t full = 0;
    std::size_t reduced = 0;
    std::optional<double> reduction; ///< 1 - reduced/full; empty if full = 0
  };

  struct comparison_report {
    std::vector<metric_row> rows;
  };

  comparison_report
  compare_metrics(const schema_metrics& full, const schema_metrics& reduced);

  /// "90.2%", or "n/a" when full is zero.
  std::string
  format_reduction(const std::optional<double>& reduction);

  enum class report_format { text, csv, json };

  std::optional<report_format>
  report_format_from_name(std::string_view name);

  std::string
  render_metrics(const schema_metrics& m, report_format format);

  std::string
  render_comparison(const comparison_report& r, report_format format);

} // namespace xsdprune
