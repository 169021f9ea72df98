#include <xsdprune/component.hpp>

#include <xsdprune/error.hpp>

#include <charconv>

namespace xsdprune {

  std::string_view
  kind_tag(component_kind kind) {
    switch (kind) {
    case component_kind::type: return "T";
    case component_kind::element: return "E";
    case component_kind::attribute: return "A";
    case component_kind::model_group: return "MG";
    case component_kind::attribute_group: return "AG";
    }
    return "?";
  }

  std::optional<component_kind>
  kind_from_tag(std::string_view tag) {
    if (tag == "T") return component_kind::type;
    if (tag == "E") return component_kind::element;
    if (tag == "A") return component_kind::attribute;
    if (tag == "MG") return component_kind::model_group;
    if (tag == "AG") return component_kind::attribute_group;
    return std::nullopt;
  }

  component_ref
  component_ref::global(component_kind kind, qualified_name name) {
    if (name.empty()) throw model_error("global component without a name");
    component_ref r;
    r.kind_ = kind;
    r.scope_ = component_scope::global;
    r.name_ = std::move(name);
    r.container_kind_ = kind;
    return r;
  }

  component_ref
  component_ref::inner(component_kind kind, const component_ref& container,
                       std::string local_name, std::uint32_t ordinal) {
    if (kind != component_kind::element && kind != component_kind::attribute)
      throw model_error("inner scope is only legal for elements and "
                        "attributes");
    if (container.is_null() || !container.is_global() ||
        container.kind() == component_kind::element ||
        container.kind() == component_kind::attribute)
      throw model_error("container of an inner component must be a global "
                        "type, model group or attribute group");
    if (!is_ncname(local_name))
      throw model_error("'" + local_name + "' is not a valid NCName");
    component_ref r;
    r.kind_ = kind;
    r.scope_ = component_scope::inner;
    r.name_ = container.name();
    r.container_kind_ = container.kind();
    r.local_ = std::move(local_name);
    r.ordinal_ = ordinal;
    return r;
  }

  component_ref
  component_ref::container() const {
    if (is_global()) throw model_error("global component has no container");
    return global(container_kind_, name_);
  }

  namespace {

    std::string_view
    container_marker(component_kind kind) {
      switch (kind) {
      case component_kind::model_group: return "(group)";
      case component_kind::attribute_group: return "(attributeGroup)";
      default: return "";
      }
    }

    std::string
    inner_suffix(const std::string& container_local, component_kind ckind,
                 const std::string& local, std::uint32_t ordinal) {
      std::string out = container_local;
      out += container_marker(ckind);
      out += ':';
      out += local;
      if (ordinal > 0) {
        out += '#';
        out += std::to_string(ordinal);
      }
      return out;
    }

  } // namespace

  std::string
  component_ref::token() const {
    if (is_global()) return name_.clark();
    return "{" + name_.namespace_uri() + "}" +
           inner_suffix(name_.local_name(), container_kind_, local_, ordinal_);
  }

  std::string
  component_ref::display() const {
    if (is_global()) return name_.local_name();
    return inner_suffix(name_.local_name(), container_kind_, local_, ordinal_);
  }

  component_ref
  parse_component_token(component_kind kind, std::string_view token) {
    auto fail = [&] {
      return model_error("malformed component token '" + std::string(token) +
                         "'");
    };
    if (token.empty() || token.front() != '{') throw fail();
    auto close = token.find('}');
    if (close == std::string_view::npos) throw fail();
    std::string ns(token.substr(1, close - 1));
    std::string_view rest = token.substr(close + 1);

    auto colon = rest.find(':');
    if (colon == std::string_view::npos)
      return component_ref::global(kind, qualified_name(ns, std::string(rest)));

    std::string_view container = rest.substr(0, colon);
    std::string_view local = rest.substr(colon + 1);
    component_kind ckind = component_kind::type;
    for (auto candidate :
         {component_kind::model_group, component_kind::attribute_group}) {
      auto marker = container_marker(candidate);
      if (container.size() > marker.size() && container.ends_with(marker)) {
        ckind = candidate;
        container.remove_suffix(marker.size());
      }
    }
    std::uint32_t ordinal = 0;
    if (auto hash = local.find('#'); hash != std::string_view::npos) {
      auto digits = local.substr(hash + 1);
      auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), ordinal);
      if (ec != std::errc() || ptr != digits.data() + digits.size())
        throw fail();
      local = local.substr(0, hash);
    }
    auto owner = component_ref::global(
      ckind, qualified_name(ns, std::string(container)));
    return component_ref::inner(kind, owner, std::string(local), ordinal);
  }

} // namespace xsdprune
