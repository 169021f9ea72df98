#include <xsdprune/instance.hpp>

#include <xsdprune/error.hpp>

namespace xsdprune {

  namespace {

    std::string
    trimmed(std::string_view s) {
      auto b = s.find_first_not_of(" \t\r\n");
      if (b == std::string_view::npos) return {};
      auto e = s.find_last_not_of(" \t\r\n");
      return std::string(s.substr(b, e - b + 1));
    }

    instance_node
    convert(const xml::node& n, const std::string& file) {
      instance_node out;
      out.name = n.name;
      out.line = n.line;
      for (const auto& a : n.attributes) {
        if (a.name.namespace_uri() == xsi_namespace) {
          if (a.name.local_name() == "type") {
            auto value = trimmed(a.value);
            auto [prefix, local] = xml::split_qname(value);
            auto uri = n.lookup_namespace(prefix);
            if (!uri)
              throw load_error("undeclared prefix in xsi:type '" + value + "'",
                               file, n.line);
            try {
              out.xsi_type = qualified_name(*uri, std::string(local));
            } catch (const model_error& e) {
              throw load_error(e.what(), file, n.line);
            }
          } else if (a.name.local_name() == "nil") {
            auto v = trimmed(a.value);
            out.xsi_nil = v == "true" || v == "1";
          }
          continue;
        }
        out.attributes.push_back({a.name, a.value});
      }
      for (const auto& c : n.children) {
        if (c.element)
          out.children.push_back(convert(*c.element, file));
        else
          out.text += c.text;
      }
      return out;
    }

  } // namespace

  instance_node
  root_of(const xml::document& doc) {
    return convert(*doc.root, doc.path.string());
  }

  instance_document
  read_instance(const std::filesystem::path& path) {
    auto doc = xml::parse_file(path);
    return {path.string(), root_of(doc)};
  }

  instance_document
  parse_instance(std::string_view text, std::string display_name) {
    auto doc = xml::parse_string(text, display_name);
    return {display_name, root_of(doc)};
  }

} // namespace xsdprune
