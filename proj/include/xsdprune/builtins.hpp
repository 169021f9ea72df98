#pragma once

#include <optional>
#include <string_view>

namespace xsdprune::builtins {

  /// True for the XSD 1.0 built-in type names, including anyType.
  bool
  is_type_name(std::string_view local);

  /// Base of a built-in type; nullopt for anyType.
  std::optional<std::string_view>
  base_of(std::string_view local);

  /// Reflexive, transitive derivation within the built-in hierarchy.
  bool
  derives_from(std::string_view derived, std::string_view base);

} // namespace xsdprune::builtins
