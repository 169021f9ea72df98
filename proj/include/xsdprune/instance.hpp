#pragma once

#include <xsdprune/qualified_name.hpp>
#include <xsdprune/xml.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xsdprune {

  struct instance_attribute {
    qualified_name name;
    std::string value;
  };

  /// An element of an instance document, reduced to what the analysis
  /// looks at. Namespace declarations and xsi:* attributes are not listed
  /// in `attributes`; xsi:type and xsi:nil are kept separately.
  struct instance_node {
    qualified_name name;
    std::vector<instance_attribute> attributes;
    std::optional<qualified_name> xsi_type;
    bool xsi_nil = false;
    std::vector<instance_node> children;
    std::string text;
    std::size_t line = 0;

    bool leaf() const { return children.empty(); }
  };

  struct instance_document {
    std::string path;
    instance_node root;
  };

  /// Converts the document element. Throws load_error when an xsi:type
  /// value uses an undeclared prefix.
  instance_node
  root_of(const xml::document& doc);

  instance_document
  read_instance(const std::filesystem::path& path);

  instance_document
  parse_instance(std::string_view text, std::string display_name = "<memory>");

} // namespace xsdprune
