#include <xsdprune/metrics.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdio>

namespace xsdprune {

  std::size_t
  schema_metrics::total_c() const {
    return types + elements + attributes + model_groups + attribute_groups;
  }

  std::size_t
  schema_metrics::total_r() const {
    return is_of_type + reference + contains + is_derived_from +
           is_in_substitution_group;
  }

  std::array<std::size_t, 12>
  schema_metrics::values() const {
    return {types,     elements,        attributes, model_groups,
            attribute_groups, is_of_type, reference, contains,
            is_derived_from, is_in_substitution_group, total_c(), total_r()};
  }

  schema_metrics
  compute_metrics(const schema_set& s, bool include_builtins) {
    schema_metrics m;
    for (const auto& t : s.types())
      if (is_builtin(t)) ++m.builtin_types;
    m.types = s.types().size() - (include_builtins ? 0 : m.builtin_types);
    m.elements = s.elements().size();
    m.attributes = s.attributes().size();
    m.model_groups = s.model_groups().size();
    m.attribute_groups = s.attribute_groups().size();
    m.is_of_type = s.pairs(relation_kind::is_of_type).size();
    m.reference = s.pairs(relation_kind::reference).size();
    m.contains = s.pairs(relation_kind::contains).size();
    m.is_derived_from = s.pairs(relation_kind::is_derived_from).size();
    m.is_in_substitution_group =
      s.pairs(relation_kind::is_in_substitution_group).size();
    for (const auto& e : s.elements())
      ++(e.is_global() ? m.global_elements : m.inner_elements);
    for (const auto& a : s.attributes())
      ++(a.is_global() ? m.global_attributes : m.inner_attributes);
    return m;
  }

  schema_metrics
  metrics_from_values(const std::array<std::size_t, 10>& v) {
    schema_metrics m;
    m.types = v[0];
    m.elements = v[1];
    m.attributes = v[2];
    m.model_groups = v[3];
    m.attribute_groups = v[4];
    m.is_of_type = v[5];
    m.reference = v[6];
    m.contains = v[7];
    m.is_derived_from = v[8];
    m.is_in_substitution_group = v[9];
    return m;
  }

  comparison_report
  compare_metrics(const schema_metrics& full, const schema_metrics& reduced) {
    comparison_report r;
    auto f = full.values();
    auto s = reduced.values();
    for (std::size_t i = 0; i < f.size(); ++i) {
      metric_row row{std::string(metric_labels[i]), f[i], s[i], std::nullopt};
      if (f[i] != 0)
        row.reduction = 1.0 - static_cast<double>(s[i]) / static_cast<double>(f[i]);
      r.rows.push_back(row);
    }
    return r;
  }

  std::string
  format_reduction(const std::optional<double>& reduction) {
    if (!reduction) return "n/a";
    char buf[32];
    double pct = *reduction * 100.0;
    std::snprintf(buf, sizeof buf, "%.1f%%", pct);
    std::string out = buf;
    if (out == "-0.0%") out = "0.0%";
    return out;
  }

  std::optional<report_format>
  report_format_from_name(std::string_view name) {
    if (name == "text") return report_format::text;
    if (name == "csv") return report_format::csv;
    if (name == "json") return report_format::json;
    return std::nullopt;
  }

  namespace {

    std::string
    pad_right(const std::string& s, std::size_t width) {
      return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
    }

    std::string
    pad_left(const std::string& s, std::size_t width) {
      return std::string(width > s.size() ? width - s.size() : 0, ' ') + s;
    }

    std::size_t
    label_width() {
      std::size_t w = 6;
      for (auto l : metric_labels) w = std::max(w, l.size());
      return w;
    }

    nlohmann::ordered_json
    breakdown(const schema_metrics& m) {
      return {{"global_elements", m.global_elements},
              {"inner_elements", m.inner_elements},
              {"global_attributes", m.global_attributes},
              {"inner_attributes", m.inner_attributes},
              {"builtin_types", m.builtin_types}};
    }

  } // namespace

  std::string
  render_metrics(const schema_metrics& m, report_format format) {
    auto v = m.values();
    std::string out;
    switch (format) {
    case report_format::text: {
      auto w = label_width();
      out += pad_right("Metric", w) + "  " + pad_left("Value", 8) + "\n";
      for (std::size_t i = 0; i < v.size(); ++i)
        out += pad_right(std::string(metric_labels[i]), w) + "  " +
               pad_left(std::to_string(v[i]), 8) + "\n";
      break;
    }
    case report_format::csv:
      out += "metric,value\n";
      for (std::size_t i = 0; i < v.size(); ++i)
        out += std::string(metric_labels[i]) + "," + std::to_string(v[i]) + "\n";
      break;
    case report_format::json: {
      nlohmann::ordered_json j;
      j["metrics"] = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < v.size(); ++i)
        j["metrics"].push_back({{"metric", metric_labels[i]}, {"value", v[i]}});
      j["breakdown"] = breakdown(m);
      out = j.dump(2) + "\n";
      break;
    }
    }
    return out;
  }

  std::string
  render_comparison(const comparison_report& r, report_format format) {
    std::string out;
    switch (format) {
    case report_format::text: {
      auto w = label_width();
      out += pad_right("Metric", w) + "  " + pad_left("Full", 8) + "  " +
             pad_left("Reduced", 8) + "  " + pad_left("Reduction", 9) + "\n";
      for (const auto& row : r.rows)
        out += pad_right(row.label, w) + "  " +
               pad_left(std::to_string(row.full), 8) + "  " +
               pad_left(std::to_string(row.reduced), 8) + "  " +
               pad_left(format_reduction(row.reduction), 9) + "\n";
      break;
    }
    case report_format::csv:
      out += "metric,full,reduced,reduction\n";
      for (const auto& row : r.rows)
        out += row.label + "," + std::to_string(row.full) + "," +
               std::to_string(row.reduced) + "," +
               format_reduction(row.reduction) + "\n";
      break;
    case report_format::json: {
      nlohmann::ordered_json j;
      j["comparison"] = nlohmann::ordered_json::array();
      for (const auto& row : r.rows)
        j["comparison"].push_back({{"metric", row.label},
                                   {"full", row.full},
                                   {"reduced", row.reduced},
                                   {"reduction", format_reduction(row.reduction)}});
      out = j.dump(2) + "\n";
      break;
    }
    }
    return out;
  }

} // namespace xsdprune
