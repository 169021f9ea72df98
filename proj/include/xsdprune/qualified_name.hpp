#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace xsdprune {

  inline constexpr std::string_view xs_namespace =
    "http://www.w3.org/2001/XMLSchema";
  inline constexpr std::string_view xsi_namespace =
    "http://www.w3.org/2001/XMLSchema-instance";
  inline constexpr std::string_view xml_namespace =
    "http://www.w3.org/XML/1998/namespace";

  /// True if `name` is a syntactically valid XML NCName. Bytes >= 0x80 are
  /// accepted as name characters (UTF-8 continuation of non-ASCII letters).
  bool
  is_ncname(std::string_view name);

  /// Namespace URI + local name. Equality is exact string equality on both.
  class qualified_name {
  public:
    qualified_name() = default;

    /// Throws model_error if `local_name` is not an NCName.
    qualified_name(std::string namespace_uri, std::string local_name);

    const std::string& namespace_uri() const { return namespace_uri_; }
    const std::string& local_name() const { return local_name_; }
    bool empty() const { return local_name_.empty(); }

    /// `{namespace}local`; the braces are always present.
    std::string
    clark() const;

    auto operator<=>(const qualified_name&) const = default;

  private:
    std::string namespace_uri_;
    std::string local_name_;
  };

  inline qualified_name
  xs_name(std::string local) {
    return qualified_name(std::string(xs_namespace), std::move(local));
  }

} // namespace xsdprune
