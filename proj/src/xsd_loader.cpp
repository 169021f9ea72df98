#include <xsdprune/xsd_loader.hpp>

#include <xsdprune/builtins.hpp>
#include <xsdprune/error.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace xsdprune {

  namespace {

    constexpr std::string_view anonymous_prefix = "urn:x-xsdprune:anonymous:";

    std::string
    trim(std::string_view s) {
      auto b = s.find_first_not_of(" \t\r\n");
      if (b == std::string_view::npos) return {};
      auto e = s.find_last_not_of(" \t\r\n");
      return std::string(s.substr(b, e - b + 1));
    }

    std::vector<std::string>
    split_ws(std::string_view s) {
      std::istringstream in{std::string(s)};
      std::vector<std::string> out;
      for (std::string t; in >> t;) out.push_back(t);
      return out;
    }

    bool
    is_true(std::optional<std::string_view> v) {
      return v && (trim(*v) == "true" || trim(*v) == "1");
    }

    bool
    looks_like_url(std::string_view s) {
      auto colon = s.find("://");
      return colon != std::string_view::npos && colon > 1;
    }

    const std::set<std::string_view>&
    facet_names() {
      static const std::set<std::string_view> names = {
        "length",        "minLength",    "maxLength",    "pattern",
        "enumeration",   "whiteSpace",   "maxInclusive", "maxExclusive",
        "minExclusive",  "minInclusive", "totalDigits",  "fractionDigits"};
      return names;
    }

  } // namespace

  std::string
  anonymous_namespace(const std::string& target_namespace) {
    return std::string(anonymous_prefix) + target_namespace;
  }

  bool
  is_anonymous_namespace(const std::string& uri) {
    return uri.starts_with(anonymous_prefix);
  }

  std::string_view
  compositor_name(compositor c) {
    switch (c) {
    case compositor::sequence: return "sequence";
    case compositor::choice: return "choice";
    case compositor::all: return "all";
    }
    return "?";
  }

  qualified_name
  resolve_qname_value(const xml::node& at, std::string_view lexical,
                      const source_document& doc) {
    auto value = trim(lexical);
    auto [prefix, local] = xml::split_qname(value);
    auto uri = at.lookup_namespace(prefix);
    if (!uri)
      throw load_error("undeclared namespace prefix '" + std::string(prefix) +
                         "' in '" + value + "'",
                       doc.doc.path.string(), at.line);
    if (prefix.empty() && uri->empty() && doc.chameleon)
      *uri = doc.target_namespace;
    try {
      return qualified_name(*uri, std::string(local));
    } catch (const model_error& e) {
      throw load_error(e.what(), doc.doc.path.string(), at.line);
    }
  }

  // ---------------------------------------------------------------------
  // source_index / schema_catalog queries

  const source_entry*
  source_index::find(const component_ref& c) const {
    auto it = entries_.find(c);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::optional<component_ref>
  source_index::component_at(const xml::node* n) const {
    auto it = node_components_.find(n);
    if (it == node_components_.end()) return std::nullopt;
    return it->second;
  }

  const source_document*
  source_index::document_of(const xml::node* n) const {
    while (n && n->parent) n = n->parent;
    auto it = roots_.find(n);
    return it == roots_.end() ? nullptr : it->second;
  }

  component_ref
  schema_catalog::resolve_type(const qualified_name& name) const {
    if (name.namespace_uri() == xs_namespace) {
      if (name.local_name() == "anyType")
        throw lookup_error("anyType is not modeled as a component");
      if (builtins::is_type_name(name.local_name()))
        return component_ref::global(component_kind::type, name);
    }
    auto it = global_types_.find(name);
    if (it == global_types_.end())
      throw lookup_error("unknown type " + name.clark());
    return it->second;
  }

  std::optional<component_ref>
  schema_catalog::find_global_element(const qualified_name& name) const {
    auto it = global_elements_.find(name);
    if (it == global_elements_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<component_ref>
  schema_catalog::find_global_attribute(const qualified_name& name) const {
    auto it = global_attributes_.find(name);
    if (it == global_attributes_.end()) return std::nullopt;
    return it->second;
  }

  std::set<qualified_name>
  schema_catalog::substitution_members(const qualified_name& head) const {
    if (!global_elements_.count(head))
      throw lookup_error(head.clark() + " is not a global element");
    auto it = substitution_index_.find(head);
    if (it == substitution_index_.end()) return {};
    return it->second;
  }

  std::vector<component_ref>
  schema_catalog::head_chain(const component_ref& element) const {
    std::vector<component_ref> out;
    const element_info* info = find_element(element);
    while (info && info->head) {
      if (std::find(out.begin(), out.end(), *info->head) != out.end()) break;
      out.push_back(*info->head);
      info = find_element(*info->head);
    }
    return out;
  }

  std::vector<component_ref>
  schema_catalog::ancestors(const component_ref& type) const {
    std::vector<component_ref> out;
    auto it = derivation_index_.find(type);
    while (it != derivation_index_.end()) {
      const auto& base = it->second.first;
      if (std::find(out.begin(), out.end(), base) != out.end()) break;
      out.push_back(base);
      it = derivation_index_.find(base);
    }
    return out;
  }

  bool
  schema_catalog::derives_from(const component_ref& derived,
                               const std::optional<component_ref>& base) const {
    if (!base) return true;
    if (derived == *base) return true;
    auto chain = ancestors(derived);
    if (std::find(chain.begin(), chain.end(), *base) != chain.end())
      return true;
    // Built-in hierarchy, reached from the last modeled ancestor.
    if (!is_builtin(*base)) return false;
    const component_ref& top = chain.empty() ? derived : chain.back();
    if (is_builtin(top))
      return builtins::derives_from(top.name().local_name(),
                                    base->name().local_name());
    if (base->name().local_name() == "anySimpleType") {
      const auto* info = find_type(top);
      return info && info->simple;
    }
    return false;
  }

  namespace {
    template <typename Map>
    const typename Map::mapped_type*
    lookup(const Map& m, const component_ref& c) {
      auto it = m.find(c);
      return it == m.end() ? nullptr : &it->second;
    }
  } // namespace

  const type_info*
  schema_catalog::find_type(const component_ref& c) const {
    return lookup(types_, c);
  }
  const element_info*
  schema_catalog::find_element(const component_ref& c) const {
    return lookup(elements_, c);
  }
  const attribute_info*
  schema_catalog::find_attribute(const component_ref& c) const {
    return lookup(attributes_, c);
  }
  const group_info*
  schema_catalog::find_group(const component_ref& c) const {
    return lookup(groups_, c);
  }
  const attribute_group_info*
  schema_catalog::find_attribute_group(const component_ref& c) const {
    return lookup(attribute_groups_, c);
  }

  const std::vector<element_path>&
  schema_catalog::effective_elements(const component_ref& type) const {
    static const std::vector<element_path> none;
    auto it = effective_elements_.find(type);
    return it == effective_elements_.end() ? none : it->second;
  }

  const std::vector<attribute_path>&
  schema_catalog::effective_attributes(const component_ref& type) const {
    static const std::vector<attribute_path> none;
    auto it = effective_attributes_.find(type);
    return it == effective_attributes_.end() ? none : it->second;
  }

  bool
  schema_catalog::has_element_wildcard(const component_ref& type) const {
    auto it = element_wildcards_.find(type);
    return it != element_wildcards_.end() && it->second;
  }

  bool
  schema_catalog::has_attribute_wildcard(const component_ref& type) const {
    auto it = attribute_wildcards_.find(type);
    return it != attribute_wildcards_.end() && it->second;
  }

  std::map<std::string, std::filesystem::path>
  read_catalog_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw load_error("cannot open catalog file", file.string());
    std::map<std::string, std::filesystem::path> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (trim(line).empty() || trim(line)[0] == '#') continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos)
        throw load_error("catalog line must be 'namespaceURI<TAB>path'",
                         file.string(), line_no);
      std::filesystem::path target = trim(line.substr(tab + 1));
      if (target.is_relative()) target = file.parent_path() / target;
      out[line.substr(0, tab)] = target;
    }
    return out;
  }

  // ---------------------------------------------------------------------
  // loading

  namespace detail {

    struct global_def {
      component_ref ref;
      const xml::node* node;
      std::shared_ptr<source_document> doc;
    };

    struct tolerated_counts {
      std::size_t annotations = 0;
      std::size_t wildcards = 0;
      std::size_t identity_constraints = 0;
    };

    struct loader {
      const load_options& options;
      loaded_schema out;

      std::map<std::pair<std::string, std::string>,
               std::shared_ptr<source_document>>
        by_key;
      std::set<std::string> loaded_namespaces;
      // import namespace -> (file, line) of the first import without location
      std::map<std::string, std::pair<std::string, std::size_t>> open_imports;
      std::vector<global_def> globals;
      std::map<std::pair<component_ref, component_kind>,
               std::map<std::string, std::uint32_t>>
        ordinals;
      std::map<std::string, tolerated_counts> tolerated;
      std::vector<component_ref> untyped_members;

      explicit loader(const load_options& o) : options(o) {}

      schema_catalog& cat() { return out.catalog; }
      source_index& src() { return out.sources; }

      [[noreturn]] void
      fail(const std::string& message, const source_document& doc,
           const xml::node* at) {
        throw load_error(message, doc.doc.path.string(), at ? at->line : 0);
      }

      void
      relate(relation_kind kind, const component_ref& x,
             const component_ref& y, const source_document& doc,
             const xml::node* at) {
        try {
          out.schema.add_relation(kind, x, y);
        } catch (const model_error& e) {
          fail(e.what(), doc, at);
        }
      }

      bool
      is_xs(const xml::node& n, std::string_view local) const {
        return n.is(xs_namespace, local);
      }

      // -- discovery ----------------------------------------------------

      std::shared_ptr<source_document>
      load_document(const std::filesystem::path& file,
                    const std::optional<std::string>& adopt_namespace,
                    const std::optional<std::string>& expect_namespace,
                    const source_document* from, const xml::node* from_node) {
        std::error_code ec;
        if (!std::filesystem::exists(file, ec)) {
          std::string what = "unresolved schema document " + file.string();
          if (from) fail(what, *from, from_node);
          throw load_error(what);
        }
        auto canonical = std::filesystem::weakly_canonical(
          std::filesystem::absolute(file));

        auto parsed = xml::parse_file(canonical);
        const xml::node& root = *parsed.root;
        if (!is_xs(root, "schema"))
          throw load_error("root element is not xs:schema", canonical.string(),
                           root.line);
        std::string declared(root.attr("targetNamespace").value_or(""));

        std::string tns = declared;
        bool chameleon = false;
        if (adopt_namespace) {
          if (root.attr("targetNamespace") && declared != *adopt_namespace)
            throw load_error("included document has targetNamespace '" +
                               declared + "' but the including document has '" +
                               *adopt_namespace + "'",
                             canonical.string(), root.line);
          if (!root.attr("targetNamespace") && !adopt_namespace->empty()) {
            chameleon = true;
            tns = *adopt_namespace;
          }
        }
        if (expect_namespace && *expect_namespace != tns)
          throw load_error("imported document has targetNamespace '" + tns +
                             "', expected '" + *expect_namespace + "'",
                           canonical.string(), root.line);

        auto key = std::make_pair(canonical.string(), tns);
        if (auto it = by_key.find(key); it != by_key.end()) return it->second;

        auto doc = std::make_shared<source_document>();
        doc->doc = std::move(parsed);
        doc->target_namespace = tns;
        doc->chameleon = chameleon;
        const xml::node& r = *doc->doc.root;
        doc->elements_qualified = trim(r.attr("elementFormDefault").value_or("")) == "qualified";
        doc->attributes_qualified = trim(r.attr("attributeFormDefault").value_or("")) == "qualified";
        doc->block_default = trim(r.attr("blockDefault").value_or(""));
        doc->final_default = trim(r.attr("finalDefault").value_or(""));
        by_key[key] = doc;
        loaded_namespaces.insert(tns);

        src().documents_.push_back(doc);
        src().roots_[doc->doc.root.get()] = doc.get();
        src().prefixes_[canonical] = r.namespace_decls;
        cat().loaded_.push_back({tns, canonical});

        auto base_dir = canonical.parent_path();
        for (const xml::node* child : r.elements()) {
          if (is_xs(*child, "include")) {
            auto loc = child->attr("schemaLocation");
            if (!loc) fail("xs:include without schemaLocation", *doc, child);
            if (looks_like_url(*loc))
              fail("network schema locations are not fetched: " +
                     std::string(*loc),
                   *doc, child);
            load_document(base_dir / trim(*loc), tns, std::nullopt, doc.get(),
                          child);
          } else if (is_xs(*child, "import")) {
            std::string ns(trim(child->attr("namespace").value_or("")));
            if (ns == xs_namespace) continue;
            if (ns == tns)
              fail("xs:import of the document's own namespace", *doc, child);
            if (auto mapped = options.namespace_locations.find(ns);
                mapped != options.namespace_locations.end()) {
              load_document(mapped->second, std::nullopt, ns, doc.get(), child);
            } else if (auto loc = child->attr("schemaLocation");
                       loc && !looks_like_url(*loc)) {
              load_document(base_dir / trim(*loc), std::nullopt, ns, doc.get(),
                            child);
            } else if (!open_imports.count(ns)) {
              open_imports[ns] = {doc->doc.path.string(), child->line};
            }
          }
        }
        return doc;
      }

      // -- global collection --------------------------------------------

      void
      register_global(component_kind kind, const xml::node& n,
                      const std::shared_ptr<source_document>& doc) {
        auto name = n.attr("name");
        if (!name) fail("global declaration without a name", *doc, &n);
        qualified_name qn;
        try {
          qn = qualified_name(doc->target_namespace, trim(*name));
        } catch (const model_error& e) {
          fail(e.what(), *doc, &n);
        }
        auto ref = component_ref::global(kind, qn);
        std::map<qualified_name, component_ref>* index = nullptr;
        switch (kind) {
        case component_kind::type: index = &cat().global_types_; break;
        case component_kind::element: index = &cat().global_elements_; break;
        case component_kind::attribute: index = &cat().global_attributes_; break;
        case component_kind::model_group: index = &cat().global_groups_; break;
        case component_kind::attribute_group: index = &cat().global_attribute_groups_; break;
        }
        if (index->count(qn)) {
          const auto* prior = src().find(ref);
          fail("duplicate global definition of " + std::string(kind_tag(kind)) +
                 " " + qn.clark() +
                 (prior ? " (first defined in " + prior->file.string() + ":" +
                            std::to_string(prior->fragment->line) + ")"
                        : std::string()),
               *doc, &n);
        }
        (*index)[qn] = ref;
        register_source(ref, n, doc);
        globals.push_back({ref, &n, doc});
      }

      void
      register_source(const component_ref& ref, const xml::node& n,
                      const std::shared_ptr<source_document>& doc) {
        source_entry entry;
        entry.file = doc->doc.path;
        entry.target_namespace = doc->target_namespace;
        entry.fragment = &n;
        entry.document = doc;
        src().entries_[ref] = std::move(entry);
        src().node_components_[&n] = ref;
      }

      void
      collect_globals() {
        for (const auto& doc_ptr : src().documents_) {
          auto doc = std::const_pointer_cast<source_document>(doc_ptr);
          for (const xml::node* child : doc->doc.root->elements()) {
            const xml::node& c = *child;
            if (c.name.namespace_uri() != xs_namespace)
              fail("unexpected element " + c.name.clark() +
                     " at schema top level",
                   *doc, &c);
            const auto& l = c.name.local_name();
            if (l == "include" || l == "import") continue;
            if (l == "annotation") {
              ++tolerated[doc->doc.path.string()].annotations;
            } else if (l == "element") {
              register_global(component_kind::element, c, doc);
            } else if (l == "attribute") {
              register_global(component_kind::attribute, c, doc);
            } else if (l == "complexType" || l == "simpleType") {
              register_global(component_kind::type, c, doc);
            } else if (l == "group") {
              register_global(component_kind::model_group, c, doc);
            } else if (l == "attributeGroup") {
              register_global(component_kind::attribute_group, c, doc);
            } else {
              fail("unsupported construct xs:" + l, *doc, &c);
            }
          }
        }
      }

      // -- lookups --------------------------------------------------------

      const component_ref&
      builtin_type(const qualified_name& qn) {
        auto ref = component_ref::global(component_kind::type, qn);
        auto [it, fresh] = cat().types_.try_emplace(ref);
        if (fresh) {
          it->second.ref = ref;
          it->second.simple = true;
          it->second.builtin = true;
        }
        return it->second.ref;
      }

      /// nullopt for anyType.
      std::optional<component_ref>
      type_by_name(const xml::node& at, std::string_view lexical,
                   const source_document& doc) {
        auto qn = resolve_qname_value(at, lexical, doc);
        if (qn.namespace_uri() == xs_namespace) {
          if (!builtins::is_type_name(qn.local_name()))
            fail("unknown built-in type " + qn.clark(), doc, &at);
          if (qn.local_name() == "anyType") return std::nullopt;
          return builtin_type(qn);
        }
        auto it = cat().global_types_.find(qn);
        if (it == cat().global_types_.end())
          fail("reference to undefined type " + qn.clark(), doc, &at);
        return it->second;
      }

      component_ref
      global_by_name(component_kind kind, const xml::node& at,
                     std::string_view lexical, const source_document& doc) {
        auto qn = resolve_qname_value(at, lexical, doc);
        const std::map<qualified_name, component_ref>* index = nullptr;
        std::string what;
        switch (kind) {
        case component_kind::element: index = &cat().global_elements_; what = "element"; break;
        case component_kind::attribute: index = &cat().global_attributes_; what = "attribute"; break;
        case component_kind::model_group: index = &cat().global_groups_; what = "group"; break;
        case component_kind::attribute_group: index = &cat().global_attribute_groups_; what = "attributeGroup"; break;
        case component_kind::type: index = &cat().global_types_; what = "type"; break;
        }
        auto it = index->find(qn);
        if (it == index->end())
          fail("reference to undefined " + what + " " + qn.clark(), doc, &at);
        return it->second;
      }

      std::uint32_t
      next_ordinal(const component_ref& container, component_kind kind,
                    const std::string& local) {
        return ordinals[{container, kind}][local]++;
      }

      static std::string
      owner_path(const component_ref& container, const std::string& local,
                 std::uint32_t ordinal) {
        std::string path = container.name().local_name();
        if (container.kind() == component_kind::model_group)
          path += ".group";
        else if (container.kind() == component_kind::attribute_group)
          path += ".attributeGroup";
        path += "." + local;
        if (ordinal > 0) path += "." + std::to_string(ordinal);
        return path;
      }

      component_ref
      anonymous_type(const std::string& local, const xml::node& def,
                     const std::shared_ptr<source_document>& doc) {
        component_ref ref;
        try {
          ref = component_ref::global(
            component_kind::type,
            qualified_name(anonymous_namespace(doc->target_namespace), local));
        } catch (const model_error& e) {
          fail(e.what(), *doc, &def);
        }
        if (cat().types_.count(ref))
          fail("synthetic anonymous type name " + ref.token() +
                 " collides with an earlier one",
               *doc, &def);
        register_source(ref, def, doc);
        if (is_xs(def, "complexType"))
          process_complex_type(ref, def, doc, true);
        else
          process_simple_type(ref, def, doc, true);
        return ref;
      }

      // -- declarations ---------------------------------------------------

      std::optional<component_ref>
      declared_type(const xml::node& decl, const std::string& anon_local,
                    const std::shared_ptr<source_document>& doc,
                    bool attribute) {
        std::optional<component_ref> type;
        bool seen_inline = false;
        if (auto t = decl.attr("type")) type = type_by_name(decl, *t, *doc);
        for (const xml::node* child : decl.elements()) {
          const xml::node& c = *child;
          if (is_xs(c, "annotation")) {
            ++tolerated[doc->doc.path.string()].annotations;
          } else if (is_xs(c, "complexType") || is_xs(c, "simpleType")) {
            if (attribute && is_xs(c, "complexType"))
              fail("attribute with a complex type", *doc, &c);
            if (decl.attr("type") || seen_inline)
              fail("declaration has both a type attribute and an inline type",
                   *doc, &c);
            seen_inline = true;
            type = anonymous_type(anon_local, c, doc);
          } else if (!attribute && (is_xs(c, "key") || is_xs(c, "keyref") ||
                                    is_xs(c, "unique"))) {
            ++tolerated[doc->doc.path.string()].identity_constraints;
          } else {
            fail("unsupported construct " + c.name.clark() + " in declaration",
                 *doc, &c);
          }
        }
        return type;
      }

      void
      process_global_element(const global_def& def) {
        const xml::node& n = *def.node;
        element_info info;
        info.ref = def.ref;
        info.name = def.ref.name();
        info.node = &n;
        info.abstract = is_true(n.attr("abstract"));
        out.schema.add_component(def.ref);
        if (auto head = n.attr("substitutionGroup")) {
          auto h = global_by_name(component_kind::element, n, *head, *def.doc);
          info.head = h;
          relate(relation_kind::is_in_substitution_group, def.ref, h,
                 *def.doc, &n);
        }
        info.type = declared_type(n, def.ref.name().local_name() + "..anon0",
                                  def.doc, false);
        if (info.type)
          relate(relation_kind::is_of_type, def.ref, *info.type, *def.doc, &n);
        else if (info.head && !n.attr("type"))
          untyped_members.push_back(def.ref);
        cat().elements_[def.ref] = info;
      }

      void
      process_global_attribute(const global_def& def) {
        const xml::node& n = *def.node;
        attribute_info info;
        info.ref = def.ref;
        info.name = def.ref.name();
        info.node = &n;
        out.schema.add_component(def.ref);
        info.type = declared_type(n, def.ref.name().local_name() + "..anonattr0",
                                  def.doc, true);
        if (info.type)
          relate(relation_kind::is_of_type, def.ref, *info.type, *def.doc, &n);
        cat().attributes_[def.ref] = info;
      }

      occurrence
      parse_occurrence(const xml::node& n, const source_document& doc) {
        occurrence o;
        try {
          if (auto v = n.attr("minOccurs")) o.min = std::stoull(trim(*v));
          if (auto v = n.attr("maxOccurs")) {
            if (trim(*v) == "unbounded")
              o.max = unbounded;
            else
              o.max = static_cast<std::uint64_t>(std::stoull(trim(*v)));
          }
        } catch (const std::logic_error&) {
          fail("malformed minOccurs/maxOccurs", doc, &n);
        }
        return o;
      }

      void
      process_local_element(const component_ref& container,
                            std::vector<particle_item>& items,
                            const xml::node& n, compositor in,
                            const std::shared_ptr<source_document>& doc) {
        particle_item item;
        item.what = particle_item::kind::element;
        item.occurs = parse_occurrence(n, *doc);
        item.in = in;
        item.node = &n;
        if (auto ref = n.attr("ref")) {
          for (const xml::node* c : n.elements())
            if (!is_xs(*c, "annotation"))
              fail("element reference with content", *doc, c);
          item.target = global_by_name(component_kind::element, n, *ref, *doc);
          item.is_reference = true;
          relate(relation_kind::reference, container, item.target, *doc, &n);
          src().node_components_[&n] = item.target;
          items.push_back(item);
          return;
        }
        auto name = n.attr("name");
        if (!name) fail("local element without name or ref", *doc, &n);
        std::string local = trim(*name);
        auto ordinal = next_ordinal(container, component_kind::element, local);
        component_ref inner;
        try {
          inner = component_ref::inner(component_kind::element, container,
                                       local, ordinal);
        } catch (const model_error& e) {
          fail(e.what(), *doc, &n);
        }
        bool qualified = doc->elements_qualified;
        if (auto form = n.attr("form")) qualified = trim(*form) == "qualified";

        element_info info;
        info.ref = inner;
        info.name = qualified_name(qualified ? doc->target_namespace : "", local);
        info.node = &n;
        info.abstract = is_true(n.attr("abstract"));
        relate(relation_kind::contains, container, inner, *doc, &n);
        info.type = declared_type(
          n, owner_path(container, local, ordinal) + "..anon0", doc, false);
        if (info.type)
          relate(relation_kind::is_of_type, inner, *info.type, *doc, &n);
        cat().elements_[inner] = info;
        src().node_components_[&n] = inner;
        item.target = inner;
        items.push_back(item);
      }

      void
      process_group_ref(const component_ref& container,
                        std::vector<particle_item>& items, const xml::node& n,
                        compositor in, const source_document& doc) {
        auto ref = n.attr("ref");
        if (!ref) fail("xs:group inside a content model needs ref", doc, &n);
        particle_item item;
        item.what = particle_item::kind::group;
        item.target = global_by_name(component_kind::model_group, n, *ref, doc);
        item.is_reference = true;
        item.occurs = parse_occurrence(n, doc);
        item.in = in;
        item.node = &n;
        relate(relation_kind::reference, container, item.target, doc, &n);
        src().node_components_[&n] = item.target;
        items.push_back(item);
      }

      void
      process_compositor(const component_ref& container,
                         std::vector<particle_item>& items, bool& wildcard,
                         const xml::node& n,
                         const std::shared_ptr<source_document>& doc) {
        compositor kind = compositor::sequence;
        if (is_xs(n, "choice")) kind = compositor::choice;
        else if (is_xs(n, "all")) kind = compositor::all;
        for (const xml::node* child : n.elements()) {
          const xml::node& c = *child;
          if (is_xs(c, "annotation")) {
            ++tolerated[doc->doc.path.string()].annotations;
          } else if (is_xs(c, "element")) {
            process_local_element(container, items, c, kind, doc);
          } else if (is_xs(c, "group")) {
            process_group_ref(container, items, c, kind, *doc);
          } else if (is_xs(c, "sequence") || is_xs(c, "choice")) {
            process_compositor(container, items, wildcard, c, doc);
          } else if (is_xs(c, "any")) {
            wildcard = true;
            ++tolerated[doc->doc.path.string()].wildcards;
          } else {
            fail("unsupported construct " + c.name.clark() +
                   " in a content model",
                 *doc, &c);
          }
        }
      }

      void
      process_attribute_child(const component_ref& container,
                              std::vector<attribute_item>& items,
                              bool& wildcard, const xml::node& c,
                              const std::shared_ptr<source_document>& doc) {
        if (is_xs(c, "anyAttribute")) {
          wildcard = true;
          ++tolerated[doc->doc.path.string()].wildcards;
          return;
        }
        attribute_item item;
        item.node = &c;
        if (is_xs(c, "attributeGroup")) {
          auto ref = c.attr("ref");
          if (!ref) fail("nested xs:attributeGroup needs ref", *doc, &c);
          item.what = attribute_item::kind::group;
          item.target =
            global_by_name(component_kind::attribute_group, c, *ref, *doc);
          item.is_reference = true;
          relate(relation_kind::reference, container, item.target, *doc, &c);
          src().node_components_[&c] = item.target;
          items.push_back(item);
          return;
        }
        // xs:attribute
        auto use = trim(c.attr("use").value_or("optional"));
        item.use = use == "required"     ? attribute_use::required
                   : use == "prohibited" ? attribute_use::prohibited
                                         : attribute_use::optional;
        if (auto ref = c.attr("ref")) {
          item.target =
            global_by_name(component_kind::attribute, c, *ref, *doc);
          item.is_reference = true;
          relate(relation_kind::reference, container, item.target, *doc, &c);
          src().node_components_[&c] = item.target;
          items.push_back(item);
          return;
        }
        auto name = c.attr("name");
        if (!name) fail("local attribute without name or ref", *doc, &c);
        std::string local = trim(*name);
        auto ordinal = next_ordinal(container, component_kind::attribute, local);
        component_ref inner;
        try {
          inner = component_ref::inner(component_kind::attribute, container,
                                       local, ordinal);
        } catch (const model_error& e) {
          fail(e.what(), *doc, &c);
        }
        bool qualified = doc->attributes_qualified;
        if (auto form = c.attr("form")) qualified = trim(*form) == "qualified";
        attribute_info info;
        info.ref = inner;
        info.name = qualified_name(qualified ? doc->target_namespace : "", local);
        info.use = item.use;
        info.node = &c;
        relate(relation_kind::contains, container, inner, *doc, &c);
        info.type = declared_type(
          c, owner_path(container, local, ordinal) + "..anonattr0", doc, true);
        if (info.type)
          relate(relation_kind::is_of_type, inner, *info.type, *doc, &c);
        cat().attributes_[inner] = info;
        src().node_components_[&c] = inner;
        item.target = inner;
        items.push_back(item);
      }

      bool
      is_attribute_child(const xml::node& c) const {
        return is_xs(c, "attribute") || is_xs(c, "attributeGroup") ||
               is_xs(c, "anyAttribute");
      }

      /// Named, non-built-in types mentioned inside a simple type
      /// definition other than its own restriction base.
      void
      collect_simple_dependencies(const xml::node& n,
                                  const source_document& doc,
                                  std::vector<component_ref>& deps,
                                  bool include_base) {
        for (const xml::node* child : n.elements()) {
          const xml::node& c = *child;
          if (is_xs(c, "restriction")) {
            if (auto b = c.attr("base"); b && include_base) {
              auto t = type_by_name(c, *b, doc);
              if (t && !is_builtin(*t) &&
                  std::find(deps.begin(), deps.end(), *t) == deps.end())
                deps.push_back(*t);
            }
            for (const xml::node* g : c.elements())
              if (is_xs(*g, "simpleType"))
                collect_simple_dependencies(*g, doc, deps, true);
          } else if (is_xs(c, "list")) {
            if (auto item = c.attr("itemType")) {
              auto t = type_by_name(c, *item, doc);
              if (t && !is_builtin(*t) &&
                  std::find(deps.begin(), deps.end(), *t) == deps.end())
                deps.push_back(*t);
            }
            for (const xml::node* g : c.elements())
              if (is_xs(*g, "simpleType"))
                collect_simple_dependencies(*g, doc, deps, true);
          } else if (is_xs(c, "union")) {
            if (auto members = c.attr("memberTypes"))
              for (const auto& m : split_ws(*members)) {
                auto t = type_by_name(c, m, doc);
                if (t && !is_builtin(*t) &&
                    std::find(deps.begin(), deps.end(), *t) == deps.end())
                  deps.push_back(*t);
              }
            for (const xml::node* g : c.elements())
              if (is_xs(*g, "simpleType"))
                collect_simple_dependencies(*g, doc, deps, true);
          }
        }
      }

      void
      process_simple_type(const component_ref& ref, const xml::node& n,
                          const std::shared_ptr<source_document>& doc,
                          bool anonymous) {
        auto& ti = cat().types_[ref];
        ti.ref = ref;
        ti.simple = true;
        ti.anonymous = anonymous;
        ti.node = &n;
        out.schema.add_component(ref);
        bool seen = false;
        for (const xml::node* child : n.elements()) {
          const xml::node& c = *child;
          if (is_xs(c, "annotation")) {
            ++tolerated[doc->doc.path.string()].annotations;
            continue;
          }
          if (!is_xs(c, "restriction") && !is_xs(c, "list") &&
              !is_xs(c, "union"))
            fail("unsupported construct " + c.name.clark() +
                   " in a simple type",
                 *doc, &c);
          if (seen) fail("simple type with more than one variety", *doc, &c);
          seen = true;
          if (is_xs(c, "restriction")) {
            ti.method = derivation_method::restriction;
            if (auto b = c.attr("base")) {
              auto base = type_by_name(c, *b, *doc);
              if (base) {
                ti.base = base;
                cat().derivation_index_[ref] = {*base, ti.method};
                relate(relation_kind::is_derived_from, ref, *base, *doc, &c);
              }
            }
            for (const xml::node* g : c.elements()) {
              if (is_xs(*g, "simpleType")) continue;
              if (is_xs(*g, "annotation")) continue;
              if (g->name.namespace_uri() != xs_namespace ||
                  !facet_names().count(g->name.local_name()))
                fail("unsupported construct " + g->name.clark() +
                       " in a simple type restriction",
                     *doc, g);
            }
          }
        }
        if (!seen) fail("simple type without restriction, list or union", *doc, &n);
        collect_simple_dependencies(n, *doc, ti.dependencies, false);
      }

      void
      process_type_content(type_info& ti, const xml::node& holder,
                           const std::shared_ptr<source_document>& doc,
                           bool simple_content) {
        for (const xml::node* child : holder.elements()) {
          const xml::node& c = *child;
          if (is_xs(c, "annotation")) {
            ++tolerated[doc->doc.path.string()].annotations;
          } else if (is_xs(c, "sequence") || is_xs(c, "choice") ||
                     is_xs(c, "all")) {
            if (simple_content)
              fail("content model inside simpleContent", *doc, &c);
            process_compositor(ti.ref, ti.particles, ti.element_wildcard, c,
                               doc);
          } else if (is_xs(c, "group")) {
            if (simple_content)
              fail("content model inside simpleContent", *doc, &c);
            process_group_ref(ti.ref, ti.particles, c, compositor::sequence,
                              *doc);
          } else if (is_attribute_child(c)) {
            process_attribute_child(ti.ref, ti.attributes,
                                    ti.attribute_wildcard, c, doc);
          } else if (simple_content && is_xs(c, "simpleType")) {
            collect_simple_dependencies(c, *doc, ti.dependencies, true);
          } else if (simple_content &&
                     c.name.namespace_uri() == xs_namespace &&
                     facet_names().count(c.name.local_name())) {
            // facets pass through
          } else {
            fail("unsupported construct " + c.name.clark() +
                   " in a complex type",
                 *doc, &c);
          }
        }
      }

      void
      process_complex_type(const component_ref& ref, const xml::node& n,
                           const std::shared_ptr<source_document>& doc,
                           bool anonymous) {
        auto& ti = cat().types_[ref];
        ti.ref = ref;
        ti.simple = false;
        ti.anonymous = anonymous;
        ti.node = &n;
        out.schema.add_component(ref);
        for (const xml::node* child : n.elements()) {
          const xml::node& c = *child;
          if (is_xs(c, "simpleContent") || is_xs(c, "complexContent")) {
            bool simple_content = is_xs(c, "simpleContent");
            for (const xml::node* d : c.elements()) {
              if (is_xs(*d, "annotation")) continue;
              bool ext = is_xs(*d, "extension");
              if (!ext && !is_xs(*d, "restriction"))
                fail("unsupported construct " + d->name.clark() +
                       " in " + c.name.local_name(),
                     *doc, d);
              ti.method = ext ? derivation_method::extension
                              : derivation_method::restriction;
              auto b = d->attr("base");
              if (!b) fail("derivation without base", *doc, d);
              if (auto base = type_by_name(*d, *b, *doc)) {
                ti.base = base;
                cat().derivation_index_[ref] = {*base, ti.method};
                relate(relation_kind::is_derived_from, ref, *base, *doc, d);
              }
              process_type_content(ti, *d, doc, simple_content);
            }
          } else {
            process_type_content(ti, n, doc, false);
            break;
          }
        }
        auto& entry = src().entries_[ref];
        for (const auto& p : ti.particles)
          entry.particles.push_back({p.target, p.is_reference, p.occurs, p.in});
      }

      void
      process_group(const global_def& def) {
        auto& gi = cat().groups_[def.ref];
        gi.ref = def.ref;
        gi.node = def.node;
        out.schema.add_component(def.ref);
        bool seen = false;
        for (const xml::node* child : def.node->elements()) {
          const xml::node& c = *child;
          if (is_xs(c, "annotation")) {
            ++tolerated[def.doc->doc.path.string()].annotations;
          } else if (!seen && (is_xs(c, "sequence") || is_xs(c, "choice") ||
                               is_xs(c, "all"))) {
            seen = true;
            process_compositor(def.ref, gi.particles, gi.element_wildcard, c,
                               def.doc);
          } else {
            fail("unsupported construct " + c.name.clark() +
                   " in a model group definition",
                 *def.doc, &c);
          }
        }
        auto& entry = src().entries_[def.ref];
        for (const auto& p : gi.particles)
          entry.particles.push_back({p.target, p.is_reference, p.occurs, p.in});
      }

      void
      process_attribute_group(const global_def& def) {
        auto& ai = cat().attribute_groups_[def.ref];
        ai.ref = def.ref;
        ai.node = def.node;
        out.schema.add_component(def.ref);
        for (const xml::node* child : def.node->elements()) {
          const xml::node& c = *child;
          if (is_xs(c, "annotation")) {
            ++tolerated[def.doc->doc.path.string()].annotations;
          } else if (is_attribute_child(c)) {
            process_attribute_child(def.ref, ai.attributes,
                                    ai.attribute_wildcard, c, def.doc);
          } else {
            fail("unsupported construct " + c.name.clark() +
                   " in an attribute group definition",
                 *def.doc, &c);
          }
        }
      }

      void
      build_components() {
        for (const auto& def : globals) {
          switch (def.ref.kind()) {
          case component_kind::element: process_global_element(def); break;
          case component_kind::attribute: process_global_attribute(def); break;
          case component_kind::type:
            if (is_xs(*def.node, "complexType"))
              process_complex_type(def.ref, *def.node, def.doc, false);
            else
              process_simple_type(def.ref, *def.node, def.doc, false);
            break;
          case component_kind::model_group: process_group(def); break;
          case component_kind::attribute_group: process_attribute_group(def); break;
          }
        }

        // Members declared without a type take their head's type.
        bool progress = true;
        while (progress && !untyped_members.empty()) {
          progress = false;
          for (auto it = untyped_members.begin(); it != untyped_members.end();) {
            auto& info = cat().elements_[*it];
            auto& head = cat().elements_[*info.head];
            bool head_pending =
              std::find(untyped_members.begin(), untyped_members.end(),
                        *info.head) != untyped_members.end();
            if (head_pending) {
              ++it;
              continue;
            }
            if (head.type) {
              info.type = head.type;
              out.schema.add_relation(relation_kind::is_of_type, info.ref,
                                      *head.type);
            }
            it = untyped_members.erase(it);
            progress = true;
          }
        }
      }

      // -- derived indexes ------------------------------------------------

      void
      flatten_particles(const std::vector<particle_item>& items,
                        const component_ref& owner,
                        std::vector<component_ref>& groups,
                        std::vector<element_path>& out_paths, bool& wildcard) {
        for (const auto& item : items) {
          if (item.what == particle_item::kind::element) {
            out_paths.push_back({item.target, item.is_reference, owner, groups});
            continue;
          }
          if (std::find(groups.begin(), groups.end(), item.target) !=
              groups.end()) {
            const auto* e = src().find(item.target);
            throw load_error("circular model group " + item.target.token(),
                             e ? e->file.string() : std::string(),
                             item.node ? item.node->line : 0);
          }
          const auto& g = cat().groups_.at(item.target);
          wildcard = wildcard || g.element_wildcard;
          groups.push_back(item.target);
          flatten_particles(g.particles, owner, groups, out_paths, wildcard);
          groups.pop_back();
        }
      }

      void
      flatten_attributes(const std::vector<attribute_item>& items,
                         const component_ref& owner,
                         std::vector<component_ref>& groups,
                         std::vector<attribute_path>& out_paths,
                         bool& wildcard) {
        for (const auto& item : items) {
          if (item.what == attribute_item::kind::attribute) {
            out_paths.push_back(
              {item.target, item.is_reference, owner, groups, item.use});
            continue;
          }
          if (std::find(groups.begin(), groups.end(), item.target) !=
              groups.end()) {
            const auto* e = src().find(item.target);
            throw load_error("circular attribute group " + item.target.token(),
                             e ? e->file.string() : std::string(),
                             item.node ? item.node->line : 0);
          }
          const auto& g = cat().attribute_groups_.at(item.target);
          wildcard = wildcard || g.attribute_wildcard;
          groups.push_back(item.target);
          flatten_attributes(g.attributes, owner, groups, out_paths, wildcard);
          groups.pop_back();
        }
      }

      const qualified_name&
      attribute_name(const component_ref& a) {
        return cat().attributes_.at(a).name;
      }

      void
      compute_effective(const component_ref& type, std::set<component_ref>& busy) {
        if (cat().effective_elements_.count(type)) return;
        if (busy.count(type))
          throw load_error("circular type derivation through " + type.token());
        busy.insert(type);
        const auto& ti = cat().types_.at(type);

        std::vector<element_path> elements;
        std::vector<attribute_path> attrs;
        bool element_wildcard = ti.element_wildcard;
        bool attribute_wildcard = ti.attribute_wildcard;

        const type_info* base = nullptr;
        if (ti.base) {
          base = &cat().types_.at(*ti.base);
          if (!base->builtin) compute_effective(*ti.base, busy);
        }
        bool inherit_content = base && !base->builtin &&
                               ti.method == derivation_method::extension;
        if (inherit_content) {
          elements = cat().effective_elements_.at(*ti.base);
          element_wildcard =
            element_wildcard || cat().element_wildcards_.at(*ti.base);
        }
        std::vector<component_ref> groups;
        flatten_particles(ti.particles, type, groups, elements,
                          element_wildcard);

        std::vector<attribute_path> own;
        flatten_attributes(ti.attributes, type, groups, own,
                           attribute_wildcard);
        if (base && !base->builtin) {
          const auto& inherited = cat().effective_attributes_.at(*ti.base);
          if (ti.method == derivation_method::extension) {
            attrs = inherited;
            attrs.insert(attrs.end(), own.begin(), own.end());
            attribute_wildcard =
              attribute_wildcard || cat().attribute_wildcards_.at(*ti.base);
          } else {
            attrs = own;
            for (const auto& p : inherited) {
              bool overridden = std::any_of(own.begin(), own.end(), [&](const auto& o) {
                return attribute_name(o.target) == attribute_name(p.target);
              });
              if (!overridden) attrs.push_back(p);
            }
          }
        } else {
          attrs = std::move(own);
        }

        cat().effective_elements_[type] = std::move(elements);
        cat().effective_attributes_[type] = std::move(attrs);
        cat().element_wildcards_[type] = element_wildcard;
        cat().attribute_wildcards_[type] = attribute_wildcard;
        busy.erase(type);
      }

      void
      build_indexes() {
        std::set<component_ref> busy;
        for (const auto& [ref, info] : cat().types_) compute_effective(ref, busy);

        for (const auto& [ref, info] : cat().elements_) {
          if (!ref.is_global()) continue;
          for (const auto& head : cat().head_chain(ref))
            cat().substitution_index_[head.name()].insert(ref.name());
        }
      }

      void
      check_imports() {
        for (const auto& [ns, where] : open_imports)
          if (!loaded_namespaces.count(ns))
            throw load_error("unresolved import of namespace '" + ns +
                               "' (no schemaLocation and no catalog entry)",
                             where.first, where.second);
      }

      void
      summarize_warnings() {
        for (const auto& [file, counts] : tolerated) {
          auto note = [&](std::size_t n, const char* what) {
            if (n)
              out.warnings.push_back(file + ": " + std::to_string(n) + " " +
                                     what +
                                     " passed through (not modeled)");
          };
          note(counts.annotations, "annotation(s)");
          note(counts.wildcards, "wildcard(s)");
          note(counts.identity_constraints, "identity constraint(s)");
        }
      }
    };

  } // namespace detail

  loaded_schema
  load_schema_set(const std::vector<std::filesystem::path>& entry_files,
                  const load_options& options) {
    detail::loader l(options);
    for (const auto& f : entry_files)
      l.load_document(f, std::nullopt, std::nullopt, nullptr, nullptr);
    l.check_imports();
    l.collect_globals();
    l.build_components();
    l.build_indexes();
    l.summarize_warnings();
    return std::move(l.out);
  }

} // namespace xsdprune
