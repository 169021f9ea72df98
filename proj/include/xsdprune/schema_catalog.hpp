#pragma once

#include <xsdprune/component.hpp>
#include <xsdprune/error.hpp>
#include <xsdprune/xml.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace xsdprune {

  namespace detail {
    struct loader;
  }

  struct unbounded_t {
    bool operator==(const unbounded_t&) const = default;
  };
  inline constexpr unbounded_t unbounded{};

  using max_occurs = std::variant<std::uint64_t, unbounded_t>;

  struct occurrence {
    std::uint64_t min = 1;
    max_occurs max = std::uint64_t{1};

    bool is_optional() const { return min == 0; }
    bool is_unbounded() const { return std::holds_alternative<unbounded_t>(max); }
  };

  enum class compositor : std::uint8_t { sequence, choice, all };
  enum class derivation_method : std::uint8_t { extension, restriction };
  enum class attribute_use : std::uint8_t { optional, required, prohibited };

  std::string_view
  compositor_name(compositor c);

  /// A schema document as loaded, with the settings needed to resolve and
  /// re-emit its content.
  struct source_document {
    xml::document doc;
    std::string target_namespace;
    bool chameleon = false; ///< no targetNamespace, adopted from includer
    bool elements_qualified = false;
    bool attributes_qualified = false;
    std::string block_default;
    std::string final_default;
  };

  /// Resolves a QName-valued attribute (type=, ref=, base= ...) in the scope
  /// of `at`. Unprefixed names in chameleon documents take the adopted
  /// namespace. Throws load_error for an undeclared prefix.
  qualified_name
  resolve_qname_value(const xml::node& at, std::string_view lexical,
                      const source_document& doc);

  /// One entry of a container's own content model.
  struct particle_item {
    enum class kind : std::uint8_t { element, group };
    kind what = kind::element;
    component_ref target; ///< inner declaration, or referenced global
    bool is_reference = false;
    occurrence occurs;
    compositor in = compositor::sequence;
    const xml::node* node = nullptr;
  };

  struct attribute_item {
    enum class kind : std::uint8_t { attribute, group };
    kind what = kind::attribute;
    component_ref target;
    bool is_reference = false;
    attribute_use use = attribute_use::optional;
    const xml::node* node = nullptr;
  };

  struct element_info {
    component_ref ref;
    qualified_name name; ///< name as it appears in instances
    std::optional<component_ref> type; ///< nullopt: anyType
    std::optional<component_ref> head; ///< substitution group head
    bool abstract = false;
    const xml::node* node = nullptr;
  };

  struct attribute_info {
    component_ref ref;
    qualified_name name;
    std::optional<component_ref> type;
    attribute_use use = attribute_use::optional;
    const xml::node* node = nullptr;
  };

  struct type_info {
    component_ref ref;
    bool simple = false;
    bool builtin = false;
    bool anonymous = false;
    std::optional<component_ref> base;
    derivation_method method = derivation_method::restriction;
    std::vector<particle_item> particles;
    std::vector<attribute_item> attributes;
    bool element_wildcard = false;
    bool attribute_wildcard = false;
    /// Named types the definition needs besides its base (list item types,
    /// union members, types inside nested anonymous simple types).
    std::vector<component_ref> dependencies;
    const xml::node* node = nullptr;
  };

  struct group_info {
    component_ref ref;
    std::vector<particle_item> particles;
    bool element_wildcard = false;
    const xml::node* node = nullptr;
  };

  struct attribute_group_info {
    component_ref ref;
    std::vector<attribute_item> attributes;
    bool attribute_wildcard = false;
    const xml::node* node = nullptr;
  };

  /// An element particle reachable from a type's effective content model:
  /// `owner` is the type whose own content holds the outermost particle,
  /// `groups` the model groups walked through, outermost first.
  struct element_path {
    component_ref target;
    bool is_reference = false;
    component_ref owner;
    std::vector<component_ref> groups;

    const component_ref&
    holder() const {
      return groups.empty() ? owner : groups.back();
    }
  };

  struct attribute_path {
    component_ref target;
    bool is_reference = false;
    component_ref owner;
    std::vector<component_ref> groups; ///< attribute groups, outermost first
    attribute_use use = attribute_use::optional;

    const component_ref&
    holder() const {
      return groups.empty() ? owner : groups.back();
    }
  };

  struct particle_record {
    component_ref target;
    bool is_reference = false;
    occurrence occurs;
    compositor in = compositor::sequence;
  };

  /// Per global component: where it came from and its original syntax.
  struct source_entry {
    std::filesystem::path file;
    std::string target_namespace;
    const xml::node* fragment = nullptr;
    std::shared_ptr<const source_document> document;
    std::vector<particle_record> particles; ///< document order
  };

  class source_index {
  public:
    const std::map<component_ref, source_entry>& entries() const { return entries_; }

    const source_entry*
    find(const component_ref& c) const;

    /// Component declared or referenced by a schema node: inner
    /// declarations map to themselves, ref= particles to their target,
    /// anonymous type definitions to their synthetic type.
    std::optional<component_ref>
    component_at(const xml::node* n) const;

    const source_document*
    document_of(const xml::node* n) const;

    /// Documents in load order.
    const std::vector<std::shared_ptr<const source_document>>&
    documents() const {
      return documents_;
    }

    /// Namespace declarations on each document's root element.
    const std::map<std::filesystem::path, std::vector<xml::namespace_decl>>&
    namespace_prefixes() const {
      return prefixes_;
    }

  private:
    friend struct detail::loader;
    std::map<component_ref, source_entry> entries_;
    std::map<const xml::node*, component_ref> node_components_;
    std::map<const xml::node*, const source_document*> roots_;
    std::vector<std::shared_ptr<const source_document>> documents_;
    std::map<std::filesystem::path, std::vector<xml::namespace_decl>> prefixes_;
  };

  /// Resolution indexes over a loaded schema set.
  class schema_catalog {
  public:
    /// Type with the given name, including XSD built-ins. Throws
    /// lookup_error for unknown names and for anyType.
    component_ref
    resolve_type(const qualified_name& name) const;

    std::optional<component_ref>
    find_global_element(const qualified_name& name) const;

    std::optional<component_ref>
    find_global_attribute(const qualified_name& name) const;

    /// Transitive substitution-group members of `head`, excluding head.
    /// Throws lookup_error when head is not a global element.
    std::set<qualified_name>
    substitution_members(const qualified_name& head) const;

    /// Head chain of a global element: its head, the head's head, ...
    std::vector<component_ref>
    head_chain(const component_ref& element) const;

    /// Transitive base chain, nearest first; never includes anyType.
    std::vector<component_ref>
    ancestors(const component_ref& type) const;

    /// True when `derived` equals `base` or derives from it transitively.
    /// A nullopt base stands for anyType.
    bool
    derives_from(const component_ref& derived,
                 const std::optional<component_ref>& base) const;

    const type_info* find_type(const component_ref& c) const;
    const element_info* find_element(const component_ref& c) const;
    const attribute_info* find_attribute(const component_ref& c) const;
    const group_info* find_group(const component_ref& c) const;
    const attribute_group_info* find_attribute_group(const component_ref& c) const;

    /// Element particles of the type's effective content model (inherited
    /// through extension), in document order.
    const std::vector<element_path>&
    effective_elements(const component_ref& type) const;

    const std::vector<attribute_path>&
    effective_attributes(const component_ref& type) const;

    bool
    has_element_wildcard(const component_ref& type) const;

    bool
    has_attribute_wildcard(const component_ref& type) const;

    const std::map<qualified_name, std::set<qualified_name>>&
    substitution_index() const {
      return substitution_index_;
    }

    const std::map<component_ref, std::pair<component_ref, derivation_method>>&
    derivation_index() const {
      return derivation_index_;
    }

    /// Loaded schema documents: (namespace, path).
    const std::vector<std::pair<std::string, std::filesystem::path>>&
    loaded() const {
      return loaded_;
    }

  private:
    friend struct detail::loader;

    std::map<qualified_name, component_ref> global_types_;
    std::map<qualified_name, component_ref> global_elements_;
    std::map<qualified_name, component_ref> global_attributes_;
    std::map<qualified_name, component_ref> global_groups_;
    std::map<qualified_name, component_ref> global_attribute_groups_;

    std::map<component_ref, type_info> types_;
    std::map<component_ref, element_info> elements_;
    std::map<component_ref, attribute_info> attributes_;
    std::map<component_ref, group_info> groups_;
    std::map<component_ref, attribute_group_info> attribute_groups_;

    std::map<component_ref, std::vector<element_path>> effective_elements_;
    std::map<component_ref, std::vector<attribute_path>> effective_attributes_;
    std::map<component_ref, bool> element_wildcards_;
    std::map<component_ref, bool> attribute_wildcards_;

    std::map<qualified_name, std::set<qualified_name>> substitution_index_;
    std::map<component_ref, std::pair<component_ref, derivation_method>>
      derivation_index_;
    std::vector<std::pair<std::string, std::filesystem::path>> loaded_;
  };

  class lookup_error : public error {
  public:
    using error::error;
  };

} // namespace xsdprune
