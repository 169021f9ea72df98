#pragma once

#include <xsdprune/schema_set.hpp>

#include <string>
#include <string_view>

namespace xsdprune {

  /// Graphviz rendering: one node per component, one labeled edge per
  /// relation pair. Output is sorted, so equal sets give equal text.
  std::string
  to_dot(const schema_set& s, std::string_view graph_name = "schema");

} // namespace xsdprune
