#include <xsdprune/schema_set.hpp>

#include <xsdprune/error.hpp>

#include <algorithm>
#include <sstream>

namespace xsdprune {

  std::string_view
  relation_name(relation_kind kind) {
    switch (kind) {
    case relation_kind::is_of_type: return "isOfType";
    case relation_kind::reference: return "reference";
    case relation_kind::contains: return "contains";
    case relation_kind::is_derived_from: return "isDerivedFrom";
    case relation_kind::is_in_substitution_group: return "isInSubstitutionGroup";
    }
    return "?";
  }

  std::optional<relation_kind>
  relation_from_name(std::string_view name) {
    for (auto kind : all_relations)
      if (relation_name(kind) == name) return kind;
    return std::nullopt;
  }

  relation&
  relation_store::operator[](relation_kind kind) {
    switch (kind) {
    case relation_kind::is_of_type: return is_of_type;
    case relation_kind::reference: return reference;
    case relation_kind::contains: return contains;
    case relation_kind::is_derived_from: return is_derived_from;
    case relation_kind::is_in_substitution_group: return is_in_substitution_group;
    }
    throw model_error("unknown relation");
  }

  const relation&
  relation_store::operator[](relation_kind kind) const {
    return const_cast<relation_store&>(*this)[kind];
  }

  bool
  is_any_type(const component_ref& c) {
    return c.kind() == component_kind::type && c.is_global() &&
           c.name().namespace_uri() == xs_namespace &&
           c.name().local_name() == "anyType";
  }

  bool
  is_builtin(const component_ref& c) {
    return c.kind() == component_kind::type && c.is_global() &&
           c.name().namespace_uri() == xs_namespace;
  }

  namespace {

    bool
    is_container_kind(component_kind k) {
      return k == component_kind::type || k == component_kind::model_group ||
             k == component_kind::attribute_group;
    }

    bool
    is_member_kind(component_kind k) {
      return k == component_kind::element || k == component_kind::attribute;
    }

    // Empty string when (x, y) fits the relation's signature.
    std::string
    signature_problem(relation_kind kind, const component_ref& x,
                      const component_ref& y) {
      switch (kind) {
      case relation_kind::is_of_type:
        if (!is_member_kind(x.kind()))
          return "left operand must be an element or attribute";
        if (y.kind() != component_kind::type)
          return "right operand must be a type";
        if (!y.is_global()) return "right operand must be global";
        return {};
      case relation_kind::reference:
        if (!x.is_global() || !is_container_kind(x.kind()))
          return "left operand must be a global type or group";
        if (!y.is_global()) return "right operand must be global";
        if (y.kind() == component_kind::type)
          return "right operand must be an element, attribute or group";
        return {};
      case relation_kind::contains:
        if (!x.is_global() || !is_container_kind(x.kind()))
          return "left operand must be a global type or group";
        if (y.is_global() || !is_member_kind(y.kind()))
          return "right operand must be an inner element or attribute";
        if (y.container() != x)
          return "right operand is not declared inside the left operand";
        return {};
      case relation_kind::is_derived_from:
        if (x.kind() != component_kind::type ||
            y.kind() != component_kind::type || !x.is_global() ||
            !y.is_global())
          return "both operands must be global types";
        return {};
      case relation_kind::is_in_substitution_group:
        if (x.kind() != component_kind::element ||
            y.kind() != component_kind::element || !x.is_global() ||
            !y.is_global())
          return "both operands must be global elements";
        return {};
      }
      return "unknown relation";
    }

    std::optional<component_ref>
    image_in(const relation& rel, const component_ref& x) {
      auto it = rel.lower_bound(component_pair{x, component_ref{}});
      if (it != rel.end() && it->first == x) return it->second;
      return std::nullopt;
    }

    // Follows isDerivedFrom from `start`; true if `target` is reached.
    bool
    derives_to(const relation& rel, const component_ref& start,
               const component_ref& target) {
      std::optional<component_ref> cur = start;
      for (std::size_t hops = 0; cur && hops <= rel.size(); ++hops) {
        if (*cur == target) return true;
        cur = image_in(rel, *cur);
      }
      return false;
    }

    std::string
    pair_text(relation_kind kind, const component_pair& p) {
      return std::string(relation_name(kind)) + "(" + p.first.token() + ", " +
             p.second.token() + ")";
    }

  } // namespace

  bool
  schema_set::contains(const component_ref& c) const {
    return components(c.kind()).count(c) != 0;
  }

  bool
  schema_set::has_pair(relation_kind kind, const component_ref& x,
                       const component_ref& y) const {
    return relations_[kind].count({x, y}) != 0;
  }

  std::optional<component_ref>
  schema_set::image(relation_kind kind, const component_ref& x) const {
    return image_in(relations_[kind], x);
  }

  bool
  schema_set::empty() const {
    for (const auto& set : components_)
      if (!set.empty()) return false;
    for (auto kind : all_relations)
      if (!relations_[kind].empty()) return false;
    return true;
  }

  void
  schema_set::add_component(const component_ref& c) {
    if (c.is_null()) throw model_error("cannot add the null component");
    if (is_any_type(c))
      throw model_error("the built-in anyType is never part of a schema set");
    unchecked_components(c.kind()).insert(c);
  }

  void
  schema_set::add_relation(relation_kind kind, const component_ref& x,
                           const component_ref& y) {
    if (auto problem = signature_problem(kind, x, y); !problem.empty())
      throw model_error(pair_text(kind, {x, y}) + ": " + problem);
    auto& rel = relations_[kind];
    if (rel.count({x, y})) return;

    if (kind == relation_kind::is_of_type ||
        kind == relation_kind::is_derived_from) {
      if (auto existing = image_in(rel, x))
        throw model_error(pair_text(kind, {x, y}) + " conflicts with " +
                          pair_text(kind, {x, *existing}));
    }
    if (kind == relation_kind::is_derived_from && derives_to(rel, y, x))
      throw model_error(pair_text(kind, {x, y}) +
                        " would introduce a derivation cycle");

    add_component(x);
    add_component(y);
    rel.insert({x, y});
  }

  void
  schema_set::merge(const schema_set& other) {
    for (auto kind : all_component_kinds)
      for (const auto& c : other.components(kind)) add_component(c);
    for (auto kind : all_relations)
      for (const auto& [x, y] : other.pairs(kind)) add_relation(kind, x, y);
  }

  schema_set
  unite(const schema_set& a, const schema_set& b) {
    schema_set out = a;
    out.merge(b);
    return out;
  }

  bool
  is_subset_of(const schema_set& a, const schema_set& b) {
    for (auto kind : all_component_kinds) {
      const auto& mine = a.components(kind);
      const auto& theirs = b.components(kind);
      if (!std::includes(theirs.begin(), theirs.end(), mine.begin(),
                         mine.end()))
        return false;
    }
    for (auto kind : all_relations) {
      const auto& mine = a.pairs(kind);
      const auto& theirs = b.pairs(kind);
      if (!std::includes(theirs.begin(), theirs.end(), mine.begin(),
                         mine.end()))
        return false;
    }
    return true;
  }

  schema_set
  copy_relations(schema_set target, const schema_set& source,
                 const std::set<component_ref>& components) {
    if (components.empty()) return target;
    for (auto kind : all_relations)
      for (const auto& [x, y] : source.pairs(kind))
        if (components.count(x) && components.count(y))
          target.add_relation(kind, x, y);
    return target;
  }

  std::vector<violation>
  consistency_check(const schema_set& s) {
    std::vector<violation> out;

    for (auto kind : all_component_kinds)
      for (const auto& c : s.components(kind)) {
        if (c.kind() != kind)
          out.push_back({"component-kind",
                         c.token() + " is stored in the " +
                           std::string(kind_tag(kind)) + " set but has kind " +
                           std::string(kind_tag(c.kind()))});
        if (is_any_type(c))
          out.push_back({"no-any-type", c.token() + " must not be stored"});
        if (!c.is_global() && c.kind() != component_kind::element &&
            c.kind() != component_kind::attribute)
          out.push_back({"inner-kind", c.token() + " cannot be inner"});
      }

    for (auto kind : all_relations) {
      const auto& rel = s.pairs(kind);
      for (const auto& p : rel) {
        if (auto problem = signature_problem(kind, p.first, p.second);
            !problem.empty())
          out.push_back({"signature", pair_text(kind, p) + ": " + problem});
        for (const auto* end : {&p.first, &p.second})
          if (!s.contains(*end))
            out.push_back({"closure", pair_text(kind, p) + ": " +
                                        end->token() +
                                        " is not in its component set"});
      }
      if (kind == relation_kind::is_of_type ||
          kind == relation_kind::is_derived_from) {
        for (auto it = rel.begin(); it != rel.end();) {
          auto next = std::next(it);
          if (next != rel.end() && next->first == it->first)
            out.push_back({"left-unique", pair_text(kind, *it) + " and " +
                                            pair_text(kind, *next)});
          it = next;
        }
      }
    }

    // Acyclicity: a cycle is reported once, at its smallest member.
    const auto& derived = s.pairs(relation_kind::is_derived_from);
    for (const auto& [start, base] : derived) {
      std::set<component_ref> seen{start};
      std::optional<component_ref> cur = base;
      while (cur && !seen.count(*cur)) {
        seen.insert(*cur);
        cur = image_in(derived, *cur);
      }
      if (cur && *cur == start && *seen.begin() == start)
        out.push_back({"acyclic", "isDerivedFrom cycle through " +
                                    start.token()});
    }
    return out;
  }

  std::string
  canonical_dump(const schema_set& s) {
    std::vector<std::string> lines;
    for (auto kind : all_component_kinds)
      for (const auto& c : s.components(kind))
        lines.push_back(std::string(kind_tag(kind)) + " " + c.token());
    for (auto kind : all_relations)
      for (const auto& [x, y] : s.pairs(kind))
        lines.push_back(std::string(relation_name(kind)) + " " +
                        std::string(kind_tag(x.kind())) + " " + x.token() +
                        " " + std::string(kind_tag(y.kind())) + " " +
                        y.token());
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& line : lines) {
      out += line;
      out += '\n';
    }
    return out;
  }

  schema_set
  parse_canonical_dump(std::string_view text) {
    schema_set out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      std::istringstream fields(line);
      std::vector<std::string> parts;
      for (std::string f; fields >> f;) parts.push_back(f);
      auto bad = [&] {
        return model_error("dump line " + std::to_string(line_no) +
                           " is malformed: " + line);
      };
      if (parts.size() == 2) {
        auto kind = kind_from_tag(parts[0]);
        if (!kind) throw bad();
        out.add_component(parse_component_token(*kind, parts[1]));
      } else if (parts.size() == 5) {
        auto rel = relation_from_name(parts[0]);
        auto lk = kind_from_tag(parts[1]);
        auto rk = kind_from_tag(parts[3]);
        if (!rel || !lk || !rk) throw bad();
        out.add_relation(*rel, parse_component_token(*lk, parts[2]),
                         parse_component_token(*rk, parts[4]));
      } else {
        throw bad();
      }
    }
    return out;
  }

} // namespace xsdprune
