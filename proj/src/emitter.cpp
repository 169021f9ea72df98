#include <xsdprune/emitter.hpp>

#include <xsdprune/error.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <functional>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace xsdprune {

  namespace {

    struct out_node {
      std::string name; ///< empty for a text node
      std::string text;
      std::vector<std::pair<std::string, std::string>> attrs;
      std::vector<out_node> children;

      void
      set(const std::string& key, const std::string& value) {
        for (auto& [k, v] : attrs)
          if (k == key) {
            v = value;
            return;
          }
        attrs.emplace_back(key, value);
      }
    };

    struct particle_result {
      std::optional<out_node> out;
      bool violation = false;
      bool emptiable = false;
      std::vector<std::string> dropped_required;
    };

    const std::set<std::string_view> qname_attributes = {
      "type", "base", "ref", "substitutionGroup", "itemType", "refer"};

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

    std::string
    filter_tokens(const std::string& value,
                  const std::set<std::string_view>& allowed) {
      if (trim(value) == "#all") return "#all";
      std::string out;
      for (const auto& t : split_ws(value))
        if (allowed.count(t)) out += (out.empty() ? "" : " ") + t;
      return out;
    }

    std::uint64_t
    min_occurs(const xml::node& n) {
      auto v = n.attr("minOccurs");
      if (!v) return 1;
      try {
        return std::stoull(trim(*v));
      } catch (const std::logic_error&) {
        return 1;
      }
    }

    bool
    is_ncname_char(char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
             c == '-' || c == '.' || static_cast<unsigned char>(c) >= 0x80;
    }

    bool
    is_ncname_start(char c) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
             static_cast<unsigned char>(c) >= 0x80;
    }

    // -- serialization ---------------------------------------------------

    bool
    is_mixed(const out_node& n) {
      return std::any_of(n.children.begin(), n.children.end(), [](const auto& c) {
        return c.name.empty() && !xml::is_xml_whitespace(c.text);
      });
    }

    void
    write_start(const out_node& n, std::string& out) {
      out += "<" + n.name;
      for (const auto& [k, v] : n.attrs)
        out += " " + k + "=\"" + xml::escape_attribute(v) + "\"";
    }

    void
    write_inline(const out_node& n, std::string& out) {
      if (n.name.empty()) {
        out += xml::escape_text(n.text);
        return;
      }
      write_start(n, out);
      if (n.children.empty()) {
        out += "/>";
        return;
      }
      out += ">";
      for (const auto& c : n.children) write_inline(c, out);
      out += "</" + n.name + ">";
    }

    void
    write_pretty(const out_node& n, std::size_t indent, std::string& out) {
      std::string pad(indent, ' ');
      if (is_mixed(n)) {
        out += pad;
        write_inline(n, out);
        out += "\n";
        return;
      }
      out += pad;
      write_start(n, out);
      bool any = std::any_of(n.children.begin(), n.children.end(),
                             [](const auto& c) { return !c.name.empty(); });
      if (!any) {
        out += "/>\n";
        return;
      }
      out += ">\n";
      for (const auto& c : n.children)
        if (!c.name.empty()) write_pretty(c, indent + 2, out);
      out += pad + "</" + n.name + ">\n";
    }

    // -- planning ----------------------------------------------------------

    class planner {
    public:
      planner(const schema_set& retained, const loaded_schema& full)
        : retained_(retained), full_(full), sources_(full.sources),
          catalog_(full.catalog) {}

      emit_plan
      run() {
        collect_names();
        collect_identity_constraints();
        assign_preferred_prefixes();

        std::map<std::string, std::vector<component_ref>> by_namespace;
        for (auto kind : all_component_kinds)
          for (const auto& c : retained_.components(kind)) {
            if (!c.is_global() || is_builtin(c)) continue;
            if (is_anonymous_namespace(c.name().namespace_uri())) continue;
            if (!sources_.find(c))
              throw emit_error("no source definition for retained component " +
                               c.display());
            by_namespace[c.name().namespace_uri()].push_back(c);
          }
        assign_file_names(by_namespace);

        for (auto& [ns, globals] : by_namespace) {
          std::sort(globals.begin(), globals.end(), [](const auto& a, const auto& b) {
            if (a.kind() != b.kind()) return a.kind() < b.kind();
            return a.name() < b.name();
          });
          plan_.files.push_back(render_file(ns, globals));
        }
        std::sort(plan_.files.begin(), plan_.files.end(),
                  [](const auto& a, const auto& b) { return a.file_name < b.file_name; });

        if (!errors_.empty()) {
          std::string message = "pruning would drop required content:";
          for (const auto& e : errors_) message += "\n  " + e;
          throw emit_error(message);
        }
        return std::move(plan_);
      }

    private:
      const schema_set& retained_;
      const loaded_schema& full_;
      const source_index& sources_;
      const schema_catalog& catalog_;

      emit_plan plan_;
      std::vector<std::string> errors_;

      std::map<std::string, std::string> prefixes_; ///< uri -> prefix
      std::set<std::string> taken_prefixes_;
      std::size_t generated_prefixes_ = 0;

      std::set<qualified_name> element_names_;
      std::set<qualified_name> attribute_names_;
      std::map<qualified_name, const xml::node*> identity_nodes_;
      std::map<const xml::node*, bool> identity_memo_;

      // per file
      std::string tns_;
      std::set<std::string> used_namespaces_;
      std::set<std::string> imports_;

      // -- setup -----------------------------------------------------------

      void
      collect_names() {
        for (const auto& e : retained_.elements())
          if (const auto* info = catalog_.find_element(e))
            element_names_.insert(info->name);
        for (const auto& a : retained_.attributes())
          if (const auto* info = catalog_.find_attribute(a))
            attribute_names_.insert(info->name);
      }

      void
      collect_identity_constraints() {
        std::function<void(const xml::node&, const source_document&)> walk =
          [&](const xml::node& n, const source_document& doc) {
            if ((n.is(xs_namespace, "key") || n.is(xs_namespace, "unique")) &&
                n.attr("name")) {
              try {
                identity_nodes_[qualified_name(doc.target_namespace,
                                               trim(*n.attr("name")))] = &n;
              } catch (const model_error&) {
              }
            }
            for (const auto* c : n.elements()) walk(*c, doc);
          };
        for (const auto& doc : sources_.documents()) walk(*doc->doc.root, *doc);
      }

      void
      assign_preferred_prefixes() {
        taken_prefixes_ = {"xs", "tns", "xml", "xmlns"};
        for (const auto& doc : sources_.documents()) {
          for (const auto& d : doc->doc.root->namespace_decls) {
            if (d.prefix.empty() || d.uri.empty()) continue;
            if (d.uri == xs_namespace || d.uri == xml_namespace) continue;
            if (prefixes_.count(d.uri) || taken_prefixes_.count(d.prefix))
              continue;
            if (d.prefix.starts_with("ns") &&
                d.prefix.find_first_not_of("0123456789", 2) == std::string::npos)
              continue;
            prefixes_[d.uri] = d.prefix;
            taken_prefixes_.insert(d.prefix);
          }
        }
      }

      void
      assign_file_names(
        const std::map<std::string, std::vector<component_ref>>& by_namespace) {
        std::set<std::string> used;
        std::set<std::string> pending;
        for (const auto& [ns, _] : by_namespace) pending.insert(ns);
        auto take = [&](const std::string& ns, std::string stem) {
          if (stem.empty()) stem = "schema";
          std::string name = stem + ".xsd";
          for (int i = 2; used.count(name); ++i)
            name = stem + "-" + std::to_string(i) + ".xsd";
          used.insert(name);
          plan_.per_namespace[ns] = name;
          pending.erase(ns);
        };
        for (const auto& doc : sources_.documents())
          if (pending.count(doc->target_namespace))
            take(doc->target_namespace, doc->doc.path.stem().string());
        for (auto ns : std::set<std::string>(pending)) take(ns, "schema");
      }

      // -- naming ----------------------------------------------------------

      std::string
      prefix_for(const std::string& uri) {
        if (uri == xs_namespace) return "xs";
        if (uri == xml_namespace) return "xml";
        if (uri.empty()) return "";
        used_namespaces_.insert(uri);
        if (uri == tns_) return "tns";
        auto it = prefixes_.find(uri);
        if (it != prefixes_.end()) return it->second;
        std::string p;
        do {
          p = "ns" + std::to_string(++generated_prefixes_);
        } while (taken_prefixes_.count(p));
        taken_prefixes_.insert(p);
        prefixes_[uri] = p;
        return p;
      }

      std::string
      qname_out(const qualified_name& qn) {
        auto p = prefix_for(qn.namespace_uri());
        return p.empty() ? qn.local_name() : p + ":" + qn.local_name();
      }

      std::string
      reference_out(const xml::node& at, std::string_view lexical,
                    const source_document& doc) {
        auto qn = resolve_qname_value(at, lexical, doc);
        if (qn.namespace_uri() != tns_ && qn.namespace_uri() != xs_namespace)
          imports_.insert(qn.namespace_uri());
        return qname_out(qn);
      }

      std::string
      element_name_out(const xml::node& n) {
        if (n.name.namespace_uri() == xs_namespace)
          return "xs:" + n.name.local_name();
        return qname_out(n.name);
      }

      /// Rewrites the prefixes of an identity-constraint XPath.
      std::string
      xpath_out(const xml::node& at, std::string_view path) {
        std::string out;
        std::size_t i = 0;
        while (i < path.size()) {
          if (is_ncname_start(path[i]) &&
              (i == 0 || !is_ncname_char(path[i - 1]))) {
            std::size_t j = i;
            while (j < path.size() && is_ncname_char(path[j])) ++j;
            if (j + 1 < path.size() && path[j] == ':' && path[j + 1] != ':') {
              auto uri = at.lookup_namespace(path.substr(i, j - i));
              if (uri) {
                auto p = prefix_for(*uri);
                out += p.empty() ? "" : p + ":";
                i = j + 1;
                continue;
              }
            }
            out.append(path.substr(i, j - i));
            i = j;
            continue;
          }
          out += path[i++];
        }
        return out;
      }

      // -- generic copies ----------------------------------------------------

      void
      copy_attributes(const xml::node& n, const source_document& doc,
                      out_node& o,
                      const std::set<std::string_view>& skip = {}) {
        bool xsd = n.name.namespace_uri() == xs_namespace;
        for (const auto& a : n.attributes) {
          const auto& ns = a.name.namespace_uri();
          const auto& local = a.name.local_name();
          if (!ns.empty()) {
            o.attrs.emplace_back(qname_out(a.name), a.value);
            continue;
          }
          if (skip.count(local)) continue;
          if (xsd && qname_attributes.count(local)) {
            o.attrs.emplace_back(local, reference_out(n, a.value, doc));
          } else if (xsd && local == "memberTypes") {
            std::string v;
            for (const auto& m : split_ws(a.value))
              v += (v.empty() ? "" : " ") + reference_out(n, m, doc);
            o.attrs.emplace_back(local, v);
          } else if (xsd && local == "xpath") {
            o.attrs.emplace_back(local, xpath_out(n, a.value));
          } else {
            o.attrs.emplace_back(local, a.value);
          }
        }
      }

      out_node
      copy_deep(const xml::node& n, const source_document& doc) {
        out_node o;
        o.name = element_name_out(n);
        copy_attributes(n, doc, o);
        for (const auto& c : n.children) {
          if (c.element)
            o.children.push_back(copy_deep(*c.element, doc));
          else
            o.children.push_back(out_node{"", c.text, {}, {}});
        }
        return o;
      }

      bool
      is_xs(const xml::node& n, std::string_view local) const {
        return n.is(xs_namespace, local);
      }

      // -- declarations ------------------------------------------------------

      void
      apply_defaults(const xml::node& n, const source_document& doc, out_node& o,
                     const std::set<std::string_view>& block_tokens,
                     const std::set<std::string_view>& final_tokens) {
        if (!block_tokens.empty() && !n.attr("block") && !doc.block_default.empty()) {
          auto v = filter_tokens(doc.block_default, block_tokens);
          if (!v.empty()) o.set("block", v);
        }
        if (!final_tokens.empty() && !n.attr("final") && !doc.final_default.empty()) {
          auto v = filter_tokens(doc.final_default, final_tokens);
          if (!v.empty()) o.set("final", v);
        }
      }

      void
      set_form(const xml::node& n, out_node& o,
               const std::optional<qualified_name>& name) {
        if (name && !name->namespace_uri().empty()) {
          // keep "name" first for readability
          auto it = std::find_if(o.attrs.begin(), o.attrs.end(),
                                 [](const auto& a) { return a.first == "name"; });
          o.attrs.insert(it == o.attrs.end() ? it : it + 1, {"form", "qualified"});
        }
        (void)n;
      }

      out_node
      element_decl(const xml::node& n, const source_document& doc, bool global) {
        out_node o;
        o.name = "xs:element";
        copy_attributes(n, doc, o, {"form"});
        if (!global && !n.attr("ref")) {
          auto c = sources_.component_at(&n);
          const auto* info = c ? catalog_.find_element(*c) : nullptr;
          if (info) set_form(n, o, info->name);
        }
        if (!n.attr("ref")) {
          apply_defaults(n, doc, o, {"extension", "restriction", "substitution"},
                         global ? std::set<std::string_view>{"extension", "restriction"}
                                : std::set<std::string_view>{});
        }
        for (const auto* c : n.elements()) {
          if (is_xs(*c, "complexType")) {
            o.children.push_back(complex_type(*c, doc, false));
          } else if (is_xs(*c, "simpleType")) {
            o.children.push_back(copy_deep(*c, doc));
          } else if (is_xs(*c, "key") || is_xs(*c, "unique") ||
                     is_xs(*c, "keyref")) {
            if (identity_kept(*c))
              o.children.push_back(copy_deep(*c, doc));
            else
              plan_.warnings.push_back(
                "identity constraint '" +
                std::string(c->attr("name").value_or("?")) + "' in " +
                doc.doc.path.filename().string() + ":" +
                std::to_string(c->line) +
                " dropped: it refers to pruned components");
          } else {
            o.children.push_back(copy_deep(*c, doc));
          }
        }
        return o;
      }

      bool
      xpath_ok(const xml::node& at, std::string_view path) {
        std::string p(path);
        for (auto& ch : p)
          if (ch == '|') ch = '/';
        std::size_t start = 0;
        while (start <= p.size()) {
          auto end = p.find('/', start);
          auto step = trim(p.substr(start, end == std::string::npos
                                             ? std::string::npos
                                             : end - start));
          start = end == std::string::npos ? p.size() + 1 : end + 1;
          bool attribute = false;
          if (step.starts_with("child::")) step = step.substr(7);
          if (step.starts_with("attribute::")) {
            step = step.substr(11);
            attribute = true;
          }
          if (step.starts_with("@")) {
            step = trim(step.substr(1));
            attribute = true;
          }
          if (step.empty() || step == "." || step == "*" || step.ends_with(":*"))
            continue;
          auto [prefix, local] = xml::split_qname(step);
          std::optional<std::string> uri =
            prefix.empty() ? std::optional<std::string>("")
                           : at.lookup_namespace(prefix);
          if (!uri) return false;
          qualified_name qn;
          try {
            qn = qualified_name(*uri, std::string(local));
          } catch (const model_error&) {
            return false;
          }
          if (attribute ? !attribute_names_.count(qn) : !element_names_.count(qn))
            return false;
        }
        return true;
      }

      bool
      identity_kept(const xml::node& n) {
        if (auto it = identity_memo_.find(&n); it != identity_memo_.end())
          return it->second;
        identity_memo_[&n] = false;
        bool ok = true;
        if (n.parent) {
          auto host = sources_.component_at(n.parent);
          ok = host && retained_.contains(*host);
        }
        for (const auto* c : n.elements())
          if (is_xs(*c, "selector") || is_xs(*c, "field"))
            ok = ok && xpath_ok(*c, c->attr("xpath").value_or(""));
        if (ok && is_xs(n, "keyref")) {
          const auto* doc = sources_.document_of(&n);
          auto refer = n.attr("refer");
          ok = false;
          if (doc && refer) {
            try {
              auto qn = resolve_qname_value(n, *refer, *doc);
              auto it = identity_nodes_.find(qn);
              ok = it != identity_nodes_.end() && identity_kept(*it->second);
            } catch (const error&) {
              ok = false;
            }
          }
        }
        identity_memo_[&n] = ok;
        return ok;
      }

      // -- content models ----------------------------------------------------

      bool
      orig_emptiable(const xml::node& n) {
        if (min_occurs(n) == 0) return true;
        if (is_xs(n, "element") || is_xs(n, "any")) return false;
        if (is_xs(n, "group")) {
          auto g = sources_.component_at(&n);
          const auto* info = g ? catalog_.find_group(*g) : nullptr;
          if (!info || !info->node) return false;
          for (const auto* c : info->node->elements())
            if (!is_xs(*c, "annotation")) return orig_emptiable(*c);
          return true;
        }
        bool choice = is_xs(n, "choice");
        bool any_kid = false;
        for (const auto* c : n.elements()) {
          if (is_xs(*c, "annotation")) continue;
          any_kid = true;
          bool e = orig_emptiable(*c);
          if (choice && e) return true;
          if (!choice && !e) return false;
        }
        return !choice || !any_kid;
      }

      void
      record_pruned(const component_ref& container, const std::string& what,
                    bool required) {
        plan_.pruned.push_back(
          {container, what,
           required ? "required but unused" : "not used by the corpus"});
      }

      particle_result
      particle(const xml::node& n, const component_ref& container,
               const source_document& doc, bool top_of_group) {
        particle_result r;
        auto min = min_occurs(n);
        if (is_xs(n, "element") || is_xs(n, "group")) {
          auto c = sources_.component_at(&n);
          bool reference = n.attr("ref").has_value();
          bool keep = c && (reference
                              ? retained_.has_pair(relation_kind::reference,
                                                   container, *c)
                              : retained_.has_pair(relation_kind::contains,
                                                   container, *c));
          if (keep) {
            if (is_xs(n, "element")) {
              r.out = element_decl(n, doc, false);
              r.emptiable = min == 0;
            } else {
              r.out = copy_deep(n, doc);
              r.emptiable = orig_emptiable(n);
            }
            return r;
          }
          r.violation = !orig_emptiable(n);
          std::string what = c ? c->display() : std::string("?");
          record_pruned(container, what, r.violation);
          if (r.violation) r.dropped_required.push_back(what);
          return r;
        }
        if (is_xs(n, "any")) {
          r.out = copy_deep(n, doc);
          r.emptiable = min == 0;
          return r;
        }
        // compositor
        bool choice = is_xs(n, "choice");
        out_node o;
        o.name = element_name_out(n);
        copy_attributes(n, doc, o);
        std::vector<particle_result> kids;
        bool dropped_emptiable_branch = false;
        for (const auto* c : n.elements()) {
          if (is_xs(*c, "annotation")) {
            o.children.push_back(copy_deep(*c, doc));
            continue;
          }
          auto k = particle(*c, container, doc, false);
          if (k.out)
            o.children.push_back(*k.out);
          else if (orig_emptiable(*c))
            dropped_emptiable_branch = true;
          kids.push_back(std::move(k));
        }
        bool any_kept = std::any_of(kids.begin(), kids.end(),
                                    [](const auto& k) { return k.out.has_value(); });
        if (!any_kept) {
          r.violation = !orig_emptiable(n);
          if (r.violation)
            for (auto& k : kids)
              r.dropped_required.insert(r.dropped_required.end(),
                                        k.dropped_required.begin(),
                                        k.dropped_required.end());
          return r;
        }
        if (choice) {
          bool kept_emptiable = std::any_of(kids.begin(), kids.end(), [](const auto& k) {
            return k.out && k.emptiable;
          });
          r.emptiable = min == 0 || kept_emptiable;
          if (dropped_emptiable_branch && !r.emptiable) {
            if (top_of_group) {
              plan_.warnings.push_back(
                "choice in " + container.display() +
                " lost its only emptiable branch");
            } else {
              o.set("minOccurs", "0");
              r.emptiable = true;
            }
          }
        } else {
          std::vector<std::string> lost;
          for (const auto& k : kids)
            if (k.violation)
              lost.insert(lost.end(), k.dropped_required.begin(),
                          k.dropped_required.end());
          if (!lost.empty()) report_required(container, lost);
          r.emptiable = min == 0 || std::all_of(kids.begin(), kids.end(), [](const auto& k) {
                          return !k.out || k.emptiable;
                        });
        }
        r.out = std::move(o);
        return r;
      }

      void
      report_required(const component_ref& container,
                      const std::vector<std::string>& lost) {
        std::string list;
        for (const auto& l : lost) list += (list.empty() ? "" : ", ") + l;
        errors_.push_back(container.display() + ": " + list);
      }

      bool
      group_has_required(const component_ref& g, std::set<component_ref>& seen) {
        if (!seen.insert(g).second) return false;
        const auto* info = catalog_.find_attribute_group(g);
        if (!info) return false;
        for (const auto& a : info->attributes) {
          if (a.what == attribute_item::kind::group) {
            if (group_has_required(a.target, seen)) return true;
          } else if (a.use == attribute_use::required) {
            return true;
          }
        }
        return false;
      }

      std::optional<out_node>
      attribute_child(const xml::node& n, const component_ref& container,
                      const source_document& doc) {
        if (is_xs(n, "anyAttribute")) return copy_deep(n, doc);
        auto c = sources_.component_at(&n);
        bool reference = n.attr("ref").has_value();
        bool keep = c && (reference ? retained_.has_pair(relation_kind::reference,
                                                         container, *c)
                                    : retained_.has_pair(relation_kind::contains,
                                                         container, *c));
        std::string what = c ? c->display() : std::string("?");
        if (!keep) {
          bool required = false;
          if (is_xs(n, "attribute")) {
            required = trim(n.attr("use").value_or("")) == "required";
          } else if (c) {
            std::set<component_ref> seen;
            required = group_has_required(*c, seen);
          }
          record_pruned(container, what, required);
          if (required) report_required(container, {what});
          return std::nullopt;
        }
        if (is_xs(n, "attributeGroup")) return copy_deep(n, doc);
        out_node o;
        o.name = "xs:attribute";
        copy_attributes(n, doc, o, {"form"});
        if (!reference) {
          const auto* info = catalog_.find_attribute(*c);
          if (info) set_form(n, o, info->name);
        }
        for (const auto& ch : n.elements()) o.children.push_back(copy_deep(*ch, doc));
        return o;
      }

      void
      content(const xml::node& holder, const component_ref& container,
              const source_document& doc, out_node& o) {
        for (const auto* c : holder.elements()) {
          if (is_xs(*c, "sequence") || is_xs(*c, "choice") || is_xs(*c, "all") ||
              is_xs(*c, "group")) {
            auto r = particle(*c, container, doc, false);
            if (r.violation) report_required(container, r.dropped_required);
            if (r.out) o.children.push_back(std::move(*r.out));
          } else if (is_xs(*c, "attribute") || is_xs(*c, "attributeGroup") ||
                     is_xs(*c, "anyAttribute")) {
            if (auto a = attribute_child(*c, container, doc))
              o.children.push_back(std::move(*a));
          } else {
            o.children.push_back(copy_deep(*c, doc));
          }
        }
      }

      out_node
      complex_type(const xml::node& n, const source_document& doc, bool global) {
        auto container = sources_.component_at(&n);
        if (!container)
          throw emit_error("complex type without a component at " +
                           doc.doc.path.string() + ":" + std::to_string(n.line));
        out_node o;
        o.name = "xs:complexType";
        copy_attributes(n, doc, o);
        if (global)
          apply_defaults(n, doc, o, {"extension", "restriction"},
                         {"extension", "restriction"});
        bool derived = false;
        for (const auto* c : n.elements())
          if (is_xs(*c, "simpleContent") || is_xs(*c, "complexContent"))
            derived = true;
        if (!derived) {
          content(n, *container, doc, o);
          return o;
        }
        for (const auto* c : n.elements()) {
          if (!is_xs(*c, "simpleContent") && !is_xs(*c, "complexContent")) {
            o.children.push_back(copy_deep(*c, doc));
            continue;
          }
          out_node cc;
          cc.name = element_name_out(*c);
          copy_attributes(*c, doc, cc);
          for (const auto* d : c->elements()) {
            if (!is_xs(*d, "extension") && !is_xs(*d, "restriction")) {
              cc.children.push_back(copy_deep(*d, doc));
              continue;
            }
            out_node dn;
            dn.name = element_name_out(*d);
            copy_attributes(*d, doc, dn);
            content(*d, *container, doc, dn);
            cc.children.push_back(std::move(dn));
          }
          o.children.push_back(std::move(cc));
        }
        return o;
      }

      out_node
      simple_type(const xml::node& n, const source_document& doc) {
        out_node o = copy_deep(n, doc);
        apply_defaults(n, doc, o, {}, {"list", "union", "restriction"});
        return o;
      }

      out_node
      group_def(const component_ref& ref, const xml::node& n,
                const source_document& doc) {
        out_node o;
        o.name = "xs:group";
        copy_attributes(n, doc, o);
        for (const auto* c : n.elements()) {
          if (is_xs(*c, "annotation")) {
            o.children.push_back(copy_deep(*c, doc));
            continue;
          }
          auto r = particle(*c, ref, doc, true);
          if (r.violation) report_required(ref, r.dropped_required);
          // an empty compositor keeps the definition well-formed
          if (r.out) {
            o.children.push_back(std::move(*r.out));
          } else {
            out_node empty;
            empty.name = element_name_out(*c);
            o.children.push_back(std::move(empty));
          }
        }
        return o;
      }

      out_node
      attribute_group_def(const component_ref& ref, const xml::node& n,
                          const source_document& doc) {
        out_node o;
        o.name = "xs:attributeGroup";
        copy_attributes(n, doc, o);
        for (const auto* c : n.elements()) {
          if (is_xs(*c, "annotation")) {
            o.children.push_back(copy_deep(*c, doc));
          } else if (auto a = attribute_child(*c, ref, doc)) {
            o.children.push_back(std::move(*a));
          }
        }
        return o;
      }

      out_node
      global(const component_ref& ref) {
        const auto* entry = sources_.find(ref);
        const xml::node& n = *entry->fragment;
        const source_document& doc = *entry->document;
        switch (ref.kind()) {
        case component_kind::element: return element_decl(n, doc, true);
        case component_kind::attribute: {
          out_node o = copy_deep(n, doc);
          return o;
        }
        case component_kind::type:
          return is_xs(n, "complexType") ? complex_type(n, doc, true)
                                         : simple_type(n, doc);
        case component_kind::model_group: return group_def(ref, n, doc);
        case component_kind::attribute_group:
          return attribute_group_def(ref, n, doc);
        }
        throw emit_error("unknown component kind");
      }

      emitted_file
      render_file(const std::string& ns,
                  const std::vector<component_ref>& globals) {
        tns_ = ns;
        used_namespaces_.clear();
        imports_.clear();

        std::vector<out_node> body;
        for (const auto& g : globals) body.push_back(global(g));

        out_node root;
        root.name = "xs:schema";
        root.attrs.emplace_back("xmlns:xs", std::string(xs_namespace));
        if (!ns.empty()) root.attrs.emplace_back("xmlns:tns", ns);
        std::vector<std::pair<std::string, std::string>> decls;
        for (const auto& uri : used_namespaces_)
          if (uri != ns) decls.emplace_back(prefixes_.at(uri), uri);
        std::sort(decls.begin(), decls.end());
        for (const auto& [p, uri] : decls) root.attrs.emplace_back("xmlns:" + p, uri);
        if (!ns.empty()) root.attrs.emplace_back("targetNamespace", ns);

        for (const auto& uri : imports_) {
          if (uri == ns) continue;
          auto file = plan_.per_namespace.find(uri);
          if (file == plan_.per_namespace.end()) continue;
          out_node imp;
          imp.name = "xs:import";
          if (!uri.empty()) imp.attrs.emplace_back("namespace", uri);
          imp.attrs.emplace_back("schemaLocation", file->second);
          root.children.push_back(std::move(imp));
        }

        std::string text = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        write_start(root, text);
        text += ">\n";
        for (const auto& c : root.children) write_pretty(c, 2, text);
        for (const auto& b : body) {
          text += "\n";
          write_pretty(b, 2, text);
        }
        text += "</xs:schema>\n";
        return {ns, plan_.per_namespace.at(ns), std::move(text)};
      }
    };

  } // namespace

  emit_plan
  plan_emission(const schema_set& retained, const loaded_schema& full) {
    return planner(retained, full).run();
  }

  void
  write_file_atomically(const std::filesystem::path& file,
                        const std::string& content) {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    auto tmp = file;
    tmp += ".tmp-" + std::to_string(rng() % 1000000000);
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw emit_error("cannot write " + tmp.string());
      out << content;
      out.flush();
      if (!out) throw emit_error("cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, file, ec);
    if (ec) {
      std::filesystem::remove(tmp, ec);
      throw emit_error("cannot write " + file.string());
    }
  }

  std::string
  manifest_json(const emit_plan& plan, const schema_set& retained,
                const emit_options& options) {
    nlohmann::ordered_json j;
    j["files"] = nlohmann::ordered_json::array();
    for (const auto& f : plan.files)
      j["files"].push_back({{"file", f.file_name}, {"namespace", f.target_namespace}});
    j["namespaces"] = nlohmann::ordered_json::array();
    for (const auto& [ns, _] : plan.per_namespace) j["namespaces"].push_back(ns);
    std::size_t components = 0, relations = 0;
    for (auto k : all_component_kinds) components += retained.components(k).size();
    for (auto r : all_relations) relations += retained.pairs(r).size();
    j["retained"] = {{"components", components}, {"relations", relations}};
    j["pruned"] = nlohmann::ordered_json::array();
    for (const auto& p : plan.pruned)
      j["pruned"].push_back({{"container", p.container.display()},
                             {"dropped", p.dropped},
                             {"reason", p.reason}});
    j["warnings"] = plan.warnings;
    if (options.manifest_timestamp) {
      auto now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
      std::tm utc{};
      gmtime_r(&now, &utc);
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
      j["generated"] = buf;
    }
    return j.dump(2) + "\n";
  }

  void
  write_emission(const emit_plan& plan, const std::filesystem::path& out_dir,
                 const emit_options& options) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir))
      throw emit_error("cannot create output directory " + out_dir.string());
    for (const auto& f : plan.files)
      write_file_atomically(out_dir / f.file_name, f.content);
    (void)options;
  }

  emit_plan
  emit(const schema_set& retained, const loaded_schema& full,
       const std::filesystem::path& out_dir, const emit_options& options) {
    auto plan = plan_emission(retained, full);
    write_emission(plan, out_dir, options);
    write_file_atomically(out_dir / "manifest.json",
                          manifest_json(plan, retained, options));
    return plan;
  }

} // namespace xsdprune
