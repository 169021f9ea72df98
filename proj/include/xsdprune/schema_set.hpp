#pragma once

#include <xsdprune/component.hpp>

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xsdprune {

  enum class relation_kind : std::uint8_t {
    is_of_type,
    reference,
    contains,
    is_derived_from,
    is_in_substitution_group
  };

  inline constexpr std::array<relation_kind, 5> all_relations = {
    relation_kind::is_of_type, relation_kind::reference,
    relation_kind::contains, relation_kind::is_derived_from,
    relation_kind::is_in_substitution_group};

  inline constexpr std::array<component_kind, 5> all_component_kinds = {
    component_kind::type, component_kind::element, component_kind::attribute,
    component_kind::model_group, component_kind::attribute_group};

  /// isOfType, reference, contains, isDerivedFrom, isInSubstitutionGroup.
  std::string_view
  relation_name(relation_kind kind);

  std::optional<relation_kind>
  relation_from_name(std::string_view name);

  using component_pair = std::pair<component_ref, component_ref>;
  using relation = std::set<component_pair>;

  /// The five binary relations between components.
  struct relation_store {
    relation is_of_type;
    relation reference;
    relation contains;
    relation is_derived_from;
    relation is_in_substitution_group;

    relation& operator[](relation_kind kind);
    const relation& operator[](relation_kind kind) const;

    bool operator==(const relation_store&) const = default;
  };

  /// S = (T, E, A, MG, AG, R).
  ///
  /// The checked mutators keep every invariant of the model: relation
  /// endpoints are added to their component sets, isOfType and isDerivedFrom
  /// stay left-unique and isDerivedFrom stays acyclic. The built-in anyType
  /// is never a member.
  class schema_set {
  public:
    const std::set<component_ref>&
    components(component_kind kind) const {
      return components_[static_cast<std::size_t>(kind)];
    }
    const std::set<component_ref>& types() const { return components(component_kind::type); }
    const std::set<component_ref>& elements() const { return components(component_kind::element); }
    const std::set<component_ref>& attributes() const { return components(component_kind::attribute); }
    const std::set<component_ref>& model_groups() const { return components(component_kind::model_group); }
    const std::set<component_ref>& attribute_groups() const { return components(component_kind::attribute_group); }

    const relation_store& relations() const { return relations_; }
    const relation&
    pairs(relation_kind kind) const {
      return relations_[kind];
    }

    bool
    contains(const component_ref& c) const;

    bool
    has_pair(relation_kind kind, const component_ref& x,
             const component_ref& y) const;

    /// The unique right operand paired with `x`, for the left-unique
    /// relations (isOfType, isDerivedFrom); nullopt when absent.
    std::optional<component_ref>
    image(relation_kind kind, const component_ref& x) const;

    bool
    empty() const;

    /// Idempotent. Throws model_error for the built-in anyType.
    void
    add_component(const component_ref& c);

    /// Adds (x, y) to the relation, auto-adding both endpoints. Idempotent.
    /// Throws model_error on a signature violation, a second distinct type
    /// under isOfType, a second base or a cycle under isDerivedFrom.
    void
    add_relation(relation_kind kind, const component_ref& x,
                 const component_ref& y);

    /// In-place union; same errors as add_relation.
    void
    merge(const schema_set& other);

    /// Unchecked access, for building deliberately inconsistent sets.
    std::set<component_ref>&
    unchecked_components(component_kind kind) {
      return components_[static_cast<std::size_t>(kind)];
    }
    relation_store& unchecked_relations() { return relations_; }

    bool operator==(const schema_set&) const = default;

  private:
    std::array<std::set<component_ref>, 5> components_;
    relation_store relations_;
  };

  /// Component-wise and relation-wise union. Throws model_error when the two
  /// inputs disagree on a left-unique relation.
  schema_set
  unite(const schema_set& a, const schema_set& b);

  /// True iff every component set and relation of `a` is contained in `b`'s.
  bool
  is_subset_of(const schema_set& a, const schema_set& b);

  /// Returns `target` plus every relation pair of `source` whose two
  /// endpoints both belong to `components`.
  schema_set
  copy_relations(schema_set target, const schema_set& source,
                 const std::set<component_ref>& components);

  struct violation {
    std::string invariant;
    std::string detail;

    bool operator==(const violation&) const = default;
  };

  /// Empty iff every model invariant holds.
  std::vector<violation>
  consistency_check(const schema_set& s);

  /// One component or relation pair per line, sorted lexicographically.
  /// Identical sets give byte-identical dumps.
  std::string
  canonical_dump(const schema_set& s);

  /// Parses the output of canonical_dump. Blank lines and lines starting
  /// with '#' are ignored. Throws model_error on malformed lines.
  schema_set
  parse_canonical_dump(std::string_view text);

  bool
  is_any_type(const component_ref& c);

  bool
  is_builtin(const component_ref& c);

} // namespace xsdprune
