#pragma once

#include <xsdprune/qualified_name.hpp>

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

/// Minimal namespace-aware XML tree built on expat. Keeps source prefixes,
/// in-scope namespace declarations and line numbers, which is what schema
/// loading and faithful re-emission need.
namespace xsdprune::xml {

  struct attribute {
    qualified_name name;
    std::string prefix;
    std::string value;
  };

  struct namespace_decl {
    std::string prefix; ///< empty for the default namespace
    std::string uri;
  };

  class node;

  /// Either an element or a run of character data.
  struct content {
    std::unique_ptr<node> element;
    std::string text;
  };

  class node {
  public:
    qualified_name name;
    std::string prefix;
    std::vector<attribute> attributes;
    std::vector<namespace_decl> namespace_decls;
    std::vector<content> children;
    std::size_t line = 0;
    const node* parent = nullptr;

    /// Unqualified attribute lookup.
    std::optional<std::string_view>
    attr(std::string_view local) const;

    const attribute*
    find_attribute(const qualified_name& name) const;

    /// Element children in document order.
    std::vector<const node*>
    elements() const;

    /// Concatenated character data of the direct children.
    std::string
    text() const;

    bool
    has_non_whitespace_text() const;

    bool
    is(std::string_view ns, std::string_view local) const {
      return name.namespace_uri() == ns && name.local_name() == local;
    }

    /// Resolves a prefix through the in-scope declarations. The `xml`
    /// prefix is always bound; the empty prefix yields the default
    /// namespace, or "" when none is declared.
    std::optional<std::string>
    lookup_namespace(std::string_view prefix) const;
  };

  struct document {
    std::filesystem::path path;
    std::unique_ptr<node> root;
  };

  /// Throws load_error (file + line) for unreadable or malformed input.
  document
  parse_file(const std::filesystem::path& path);

  document
  parse_string(std::string_view text, std::string display_name = "<memory>");

  std::string
  escape_text(std::string_view text);

  std::string
  escape_attribute(std::string_view text);

  /// Splits `prefix:local`; prefix is empty when there is no colon.
  std::pair<std::string_view, std::string_view>
  split_qname(std::string_view lexical);

  bool
  is_xml_whitespace(std::string_view text);

} // namespace xsdprune::xml
