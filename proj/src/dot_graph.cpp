#include <xsdprune/dot_graph.hpp>

namespace xsdprune {

  namespace {

    std::string
    quoted(std::string_view s) {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      return out + "\"";
    }

    std::string
    node_id(const component_ref& c) {
      return quoted(std::string(kind_tag(c.kind())) + " " + c.token());
    }

    std::string_view
    shape(component_kind k) {
      switch (k) {
      case component_kind::type: return "ellipse";
      case component_kind::element: return "box";
      case component_kind::attribute: return "note";
      case component_kind::model_group: return "hexagon";
      case component_kind::attribute_group: return "octagon";
      }
      return "box";
    }

  } // namespace

  std::string
  to_dot(const schema_set& s, std::string_view graph_name) {
    std::string out = "digraph " + quoted(graph_name) + " {\n";
    out += "  rankdir=LR;\n";
    for (auto kind : all_component_kinds)
      for (const auto& c : s.components(kind))
        out += "  " + node_id(c) + " [label=" + quoted(c.display()) +
               ", shape=" + std::string(shape(kind)) + "];\n";
    for (auto r : all_relations)
      for (const auto& [x, y] : s.pairs(r))
        out += "  " + node_id(x) + " -> " + node_id(y) + " [label=" +
               quoted(relation_name(r)) + "];\n";
    out += "}\n";
    return out;
  }

} // namespace xsdprune
