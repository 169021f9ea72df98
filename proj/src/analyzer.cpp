#include <xsdprune/analyzer.hpp>

#include <xsdprune/error.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <thread>

namespace xsdprune {

  namespace {

    enum class match_status { matched, wildcard, none };

    const qualified_name&
    element_name(const analysis_context& ctx, const component_ref& decl) {
      const auto* info = ctx.catalog.find_element(decl);
      if (!info)
        throw analysis_error("no element information for " + decl.display());
      return info->name;
    }

    match_status
    match_child(const analysis_context& ctx, const instance_node& node,
                const component_ref& parent_type, element_match& out) {
      const auto& paths = ctx.catalog.effective_elements(parent_type);
      bool found = false;
      for (const auto& p : paths) {
        if (element_name(ctx, p.target) != node.name) continue;
        if (!found) {
          out.decl = p.target;
          out.path = p;
          found = true;
        } else {
          out.alternatives.push_back(p);
        }
      }
      if (found) return match_status::matched;

      if (auto global = ctx.catalog.find_global_element(node.name)) {
        const auto& index = ctx.catalog.substitution_index();
        for (const auto& p : paths) {
          if (!p.is_reference) continue;
          auto it = index.find(p.target.name());
          if (it == index.end() || !it->second.count(node.name)) continue;
          out.decl = *global;
          out.path = p;
          out.via_substitution = true;
          return match_status::matched;
        }
      }
      if (ctx.catalog.has_element_wildcard(parent_type))
        return match_status::wildcard;
      return match_status::none;
    }

    std::string
    child_path(const std::string& parent, const instance_node& parent_node,
               std::size_t index) {
      const auto& child = parent_node.children[index];
      std::size_t same = 0, position = 0;
      for (std::size_t i = 0; i < parent_node.children.size(); ++i)
        if (parent_node.children[i].name == child.name) {
          ++same;
          if (i <= index) ++position;
        }
      std::string p = parent + "/" + child.name.local_name();
      if (same > 1) p += "[" + std::to_string(position) + "]";
      return p;
    }

    struct walker {
      const analysis_context& ctx;
      std::string document;
      schema_set out;
      file_report report;
      std::set<component_ref> types_done;
      std::set<component_ref> elements_done;
      std::set<component_ref> attributes_done;

      walker(const analysis_context& c, std::string doc)
        : ctx(c), document(std::move(doc)) {
        report.path = document;
      }

      void
      warn(const std::string& path, const std::string& message) {
        report.warnings.push_back(document + ": " + path + ": " + message);
      }

      /// Strict: throws. Lenient: records a warning and a skipped subtree.
      void
      problem(const std::string& path, const std::string& message) {
        if (ctx.mode == analysis_mode::strict)
          throw analysis_error(message, document, path);
        warn(path, message + " (subtree skipped)");
        ++report.skipped_subtrees;
      }

      void
      retain_type(const component_ref& t) {
        if (!types_done.insert(t).second) return;
        out.add_component(t);
        const auto* info = ctx.catalog.find_type(t);
        if (!info) return;
        if (info->base) {
          out.add_relation(relation_kind::is_derived_from, t, *info->base);
          retain_type(*info->base);
        }
        for (const auto& d : info->dependencies) retain_type(d);
        // a prohibition is part of the definition, never seen in instances
        for (const auto& a : info->attributes)
          if (a.what == attribute_item::kind::attribute &&
              a.use == attribute_use::prohibited) {
            out.add_relation(a.is_reference ? relation_kind::reference
                                            : relation_kind::contains,
                             t, a.target);
            retain_attribute(a.target);
            retain_base_attributes(t,
                                   ctx.catalog.find_attribute(a.target)->name);
          }
      }

      void
      retain_element(const component_ref& decl) {
        if (!elements_done.insert(decl).second) return;
        out.add_component(decl);
        const auto* info = ctx.catalog.find_element(decl);
        if (info && info->type) {
          out.add_relation(relation_kind::is_of_type, decl, *info->type);
          retain_type(*info->type);
        }
        if (decl.is_global()) {
          component_ref member = decl;
          for (const auto& head : ctx.catalog.head_chain(decl)) {
            out.add_relation(relation_kind::is_in_substitution_group, member,
                             head);
            retain_element(head);
            member = head;
          }
        }
      }

      void
      retain_attribute(const component_ref& decl) {
        if (!attributes_done.insert(decl).second) return;
        out.add_component(decl);
        const auto* info = ctx.catalog.find_attribute(decl);
        if (info && info->type) {
          out.add_relation(relation_kind::is_of_type, decl, *info->type);
          retain_type(*info->type);
        }
      }

      template <typename Path>
      component_ref
      retain_group_hops(const Path& p) {
        component_ref holder = p.owner;
        for (const auto& g : p.groups) {
          out.add_relation(relation_kind::reference, holder, g);
          holder = g;
        }
        return holder;
      }

      /// A restriction only keeps what its base allows: keep the same-named
      /// particles of the base as well.
      std::optional<component_ref>
      restricted_base(const component_ref& owner) const {
        const auto& index = ctx.catalog.derivation_index();
        auto it = index.find(owner);
        if (it == index.end() ||
            it->second.second != derivation_method::restriction)
          return std::nullopt;
        const auto* base = ctx.catalog.find_type(it->second.first);
        if (!base || base->builtin || base->simple) return std::nullopt;
        return it->second.first;
      }

      void
      retain_particle(const element_path& p) {
        auto holder = retain_group_hops(p);
        out.add_relation(p.is_reference ? relation_kind::reference
                                        : relation_kind::contains,
                         holder, p.target);
        retain_element(p.target);
        if (auto base = restricted_base(p.owner)) {
          const auto& name = element_name(ctx, p.target);
          for (const auto& q : ctx.catalog.effective_elements(*base))
            if (element_name(ctx, q.target) == name &&
                !out.has_pair(q.is_reference ? relation_kind::reference
                                             : relation_kind::contains,
                              q.holder(), q.target))
              retain_particle(q);
        }
      }

      void
      retain_attribute_path(const attribute_path& p) {
        auto holder = retain_group_hops(p);
        out.add_relation(p.is_reference ? relation_kind::reference
                                        : relation_kind::contains,
                         holder, p.target);
        retain_attribute(p.target);
        retain_base_attributes(p.owner,
                               ctx.catalog.find_attribute(p.target)->name);
      }

      /// Same-named attributes of the base of a restriction.
      void
      retain_base_attributes(const component_ref& owner,
                             const qualified_name& name) {
        auto base = restricted_base(owner);
        if (!base) return;
        for (const auto& q : ctx.catalog.effective_attributes(*base))
          if (q.use != attribute_use::prohibited &&
              ctx.catalog.find_attribute(q.target)->name == name &&
              !out.has_pair(q.is_reference ? relation_kind::reference
                                           : relation_kind::contains,
                            q.holder(), q.target))
            retain_attribute_path(q);
      }

      /// False when the node has to be skipped (lenient mode).
      bool
      dynamic_type(const instance_node& node, const component_ref& decl,
                   const std::string& path, std::optional<component_ref>& dyn) {
        try {
          dyn = type_of(ctx, node, decl);
          return true;
        } catch (const analysis_error& e) {
          problem(path, e.what());
          return false;
        }
      }

      void
      visit_attributes(const instance_node& node,
                       const std::optional<component_ref>& dyn,
                       const std::string& path) {
        for (const auto& a : node.attributes) {
          std::string where = path + "/@" + a.name.local_name();
          if (!dyn) {
            warn(where, "attribute on an element of type anyType not analyzed");
            continue;
          }
          const attribute_path* found = nullptr;
          for (const auto& p : ctx.catalog.effective_attributes(*dyn)) {
            if (p.use == attribute_use::prohibited) continue;
            if (ctx.catalog.find_attribute(p.target)->name == a.name) {
              found = &p;
              break;
            }
          }
          if (found) {
            retain_attribute_path(*found);
          } else if (ctx.catalog.has_attribute_wildcard(*dyn)) {
            warn(where, "attribute " + a.name.clark() +
                          " matched an attribute wildcard; not analyzed");
          } else if (ctx.mode == analysis_mode::strict) {
            throw analysis_error("no declaration for attribute " +
                                   a.name.clark() + " in type " +
                                   dyn->display(),
                                 document, where);
          } else {
            warn(where, "no declaration for attribute " + a.name.clark() +
                          " in type " + dyn->display() + " (skipped)");
          }
        }
      }

      void
      visit(const instance_node& node, const component_ref& decl,
            const std::optional<component_ref>& dyn, const std::string& path) {
        retain_element(decl);
        if (dyn) retain_type(*dyn);
        visit_attributes(node, dyn, path);

        for (std::size_t i = 0; i < node.children.size(); ++i) {
          const auto& child = node.children[i];
          auto cpath = child_path(path, node, i);
          if (!dyn) {
            warn(cpath, "child of an element of type anyType not analyzed");
            ++report.skipped_subtrees;
            continue;
          }
          element_match m;
          switch (match_child(ctx, child, *dyn, m)) {
          case match_status::wildcard:
            warn(cpath, "element " + child.name.clark() +
                          " matched a wildcard; subtree not analyzed");
            ++report.skipped_subtrees;
            continue;
          case match_status::none:
            problem(cpath, "no declaration for element " + child.name.clark() +
                             " in the content model of " + dyn->display());
            continue;
          case match_status::matched:
            break;
          }
          std::optional<component_ref> child_dyn;
          if (!dynamic_type(child, m.decl, cpath, child_dyn)) continue;
          visit(child, m.decl, child_dyn, cpath);
          retain_particle(*m.path);
          for (const auto& alt : m.alternatives) retain_particle(alt);
        }
      }

      void
      run(const instance_node& root) {
        std::string path = "/" + root.name.local_name();
        auto decl = ctx.catalog.find_global_element(root.name);
        if (!decl) {
          problem(path, "no global element declaration for " +
                          root.name.clark());
          return;
        }
        std::optional<component_ref> dyn;
        if (!dynamic_type(root, *decl, path, dyn)) return;
        visit(root, *decl, dyn, path);
      }

      void
      finish() {
        for (auto k : all_component_kinds)
          report.components += out.components(k).size();
        for (auto r : all_relations) report.relations += out.pairs(r).size();
      }
    };

    template <typename Item, typename Analyze>
    subset_result
    fold(const std::vector<Item>& corpus, unsigned jobs, Analyze analyze) {
      std::vector<std::optional<std::pair<schema_set, file_report>>> results(
        corpus.size());
      std::vector<std::exception_ptr> errors(corpus.size());

      auto work = [&](std::size_t i) {
        try {
          results[i] = analyze(corpus[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      };

      if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
      jobs = static_cast<unsigned>(
        std::min<std::size_t>(jobs, std::max<std::size_t>(1, corpus.size())));
      if (jobs <= 1) {
        for (std::size_t i = 0; i < corpus.size(); ++i) {
          work(i);
          if (errors[i]) std::rethrow_exception(errors[i]);
        }
      } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t)
          pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < corpus.size();) work(i);
          });
        for (auto& t : pool) t.join();
        for (auto& e : errors)
          if (e) std::rethrow_exception(e);
      }

      subset_result out;
      for (auto& r : results) {
        out.schema.merge(r->first);
        out.report.files.push_back(std::move(r->second));
      }
      return out;
    }

  } // namespace

  component_ref
  element_decl(const analysis_context& ctx, const instance_node& node,
               const std::optional<component_ref>& parent_type) {
    if (!parent_type) {
      auto decl = ctx.catalog.find_global_element(node.name);
      if (!decl)
        throw analysis_error("no global element declaration for " +
                             node.name.clark());
      return *decl;
    }
    element_match m;
    switch (match_child(ctx, node, *parent_type, m)) {
    case match_status::matched: return m.decl;
    case match_status::wildcard:
      throw analysis_error("element " + node.name.clark() +
                           " only matches a wildcard of " +
                           parent_type->display());
    case match_status::none: break;
    }
    throw analysis_error("no declaration for element " + node.name.clark() +
                         " in the content model of " + parent_type->display());
  }

  std::optional<component_ref>
  type_of(const analysis_context& ctx, const instance_node& node,
          const component_ref& decl) {
    const auto* info = ctx.catalog.find_element(decl);
    if (!info)
      throw analysis_error(decl.display() + " is not an element declaration");
    const auto& declared = info->type;
    if (!node.xsi_type) return declared;

    const auto& qn = *node.xsi_type;
    if (qn.namespace_uri() == xs_namespace && qn.local_name() == "anyType") {
      if (!declared) return std::nullopt;
      throw analysis_error("xsi:type anyType does not derive from " +
                           declared->display());
    }
    component_ref dyn;
    try {
      dyn = ctx.catalog.resolve_type(qn);
    } catch (const lookup_error&) {
      throw analysis_error("xsi:type names unknown type " + qn.clark());
    }
    if (!ctx.catalog.derives_from(dyn, declared))
      throw analysis_error("xsi:type " + dyn.display() +
                           " does not derive from the declared type " +
                           (declared ? declared->display()
                                     : std::string("anyType")));
    return dyn;
  }

  component_ref
  container_of(const analysis_context& ctx, const component_ref& decl,
               const component_ref& dynamic_type) {
    const auto& paths = ctx.catalog.effective_elements(dynamic_type);
    for (const auto& p : paths)
      if (p.target == decl) return p.holder();
    if (decl.is_global()) {
      auto chain = ctx.catalog.head_chain(decl);
      for (const auto& p : paths)
        if (p.is_reference &&
            std::find(chain.begin(), chain.end(), p.target) != chain.end())
          return p.holder();
    }
    throw analysis_error(decl.display() +
                         " is not reachable from the content model of " +
                         dynamic_type.display());
  }

  std::vector<component_ref>
  ancestors(const analysis_context& ctx, const component_ref& type) {
    return ctx.catalog.ancestors(type);
  }

  schema_set
  schema_subset_used_in(const analysis_context& ctx, const instance_node& node,
                        const component_ref& decl) {
    walker w(ctx, "<fragment>");
    auto dyn = type_of(ctx, node, decl);
    w.visit(node, decl, dyn, "/" + node.name.local_name());
    return std::move(w.out);
  }

  subset_result
  subset_schemas(const analysis_context& ctx,
                 const std::vector<instance_document>& corpus, unsigned jobs) {
    return fold(corpus, jobs, [&](const instance_document& doc) {
      walker w(ctx, doc.path);
      w.run(doc.root);
      w.finish();
      return std::make_pair(std::move(w.out), std::move(w.report));
    });
  }

  subset_result
  subset_files(const analysis_context& ctx,
               const std::vector<std::filesystem::path>& corpus,
               unsigned jobs) {
    return fold(corpus, jobs, [&](const std::filesystem::path& file) {
      auto doc = read_instance(file);
      walker w(ctx, doc.path);
      w.run(doc.root);
      w.finish();
      return std::make_pair(std::move(w.out), std::move(w.report));
    });
  }

} // namespace xsdprune
