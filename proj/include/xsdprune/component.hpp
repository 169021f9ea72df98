#pragma once

#include <xsdprune/qualified_name.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace xsdprune {

  enum class component_kind : std::uint8_t {
    type,
    element,
    attribute,
    model_group,
    attribute_group
  };

  enum class component_scope : std::uint8_t { global, inner };

  /// Short tag used in dumps and graphs: T, E, A, MG, AG.
  std::string_view
  kind_tag(component_kind kind);

  std::optional<component_kind>
  kind_from_tag(std::string_view tag);

  /// Typed reference to a schema component.
  ///
  /// Global components are identified by their qualified name. Inner
  /// components (nested element/attribute declarations) are identified by
  /// their container plus the local name and an ordinal which separates
  /// repeated local names within one container, e.g. `ContainerType:item`.
  class component_ref {
  public:
    /// The null reference; orders before every real reference.
    component_ref() = default;

    static component_ref
    global(component_kind kind, qualified_name name);

    /// Throws model_error unless kind is element/attribute and the
    /// container is a global type, model group or attribute group.
    static component_ref
    inner(component_kind kind, const component_ref& container,
          std::string local_name, std::uint32_t ordinal = 0);

    component_kind kind() const { return kind_; }
    component_scope scope() const { return scope_; }
    bool is_global() const { return scope_ == component_scope::global; }
    bool is_null() const { return name_.empty(); }

    /// Own name for globals; the container's name for inner components.
    const qualified_name& name() const { return name_; }

    /// Only meaningful for inner components.
    component_ref
    container() const;
    const std::string& local_name() const { return local_; }
    std::uint32_t ordinal() const { return ordinal_; }

    /// Dump token: `{ns}Name`, `{ns}Container:local`, with `(group)` or
    /// `(attributeGroup)` after the container name for group containers and
    /// `#n` for ordinals above zero.
    std::string
    token() const;

    /// Short human-readable form without the namespace, e.g. `Base:baseElem`.
    std::string
    display() const;

    auto operator<=>(const component_ref&) const = default;

  private:
    component_kind kind_ = component_kind::type;
    component_scope scope_ = component_scope::global;
    qualified_name name_;
    component_kind container_kind_ = component_kind::type;
    std::string local_;
    std::uint32_t ordinal_ = 0;
  };

  /// Inverse of component_ref::token() for a component of the given kind.
  /// Throws model_error on malformed input.
  component_ref
  parse_component_token(component_kind kind, std::string_view token);

} // namespace xsdprune
