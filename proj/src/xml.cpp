#include <xsdprune/xml.hpp>

#include <xsdprune/error.hpp>

#include <expat.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

namespace xsdprune::xml {

  std::optional<std::string_view>
  node::attr(std::string_view local) const {
    for (const auto& a : attributes)
      if (a.name.namespace_uri().empty() && a.name.local_name() == local)
        return std::string_view(a.value);
    return std::nullopt;
  }

  const attribute*
  node::find_attribute(const qualified_name& n) const {
    for (const auto& a : attributes)
      if (a.name == n) return &a;
    return nullptr;
  }

  std::vector<const node*>
  node::elements() const {
    std::vector<const node*> out;
    for (const auto& c : children)
      if (c.element) out.push_back(c.element.get());
    return out;
  }

  std::string
  node::text() const {
    std::string out;
    for (const auto& c : children)
      if (!c.element) out += c.text;
    return out;
  }

  bool
  node::has_non_whitespace_text() const {
    for (const auto& c : children)
      if (!c.element && !is_xml_whitespace(c.text)) return true;
    return false;
  }

  std::optional<std::string>
  node::lookup_namespace(std::string_view pfx) const {
    if (pfx == "xml") return std::string(xml_namespace);
    for (const node* n = this; n; n = n->parent)
      for (const auto& d : n->namespace_decls)
        if (d.prefix == pfx) return d.uri;
    if (pfx.empty()) return std::string();
    return std::nullopt;
  }

  bool
  is_xml_whitespace(std::string_view text) {
    return std::all_of(text.begin(), text.end(), [](char c) {
      return c == ' ' || c == '\t' || c == '\n' || c == '\r';
    });
  }

  std::pair<std::string_view, std::string_view>
  split_qname(std::string_view lexical) {
    auto colon = lexical.find(':');
    if (colon == std::string_view::npos) return {{}, lexical};
    return {lexical.substr(0, colon), lexical.substr(colon + 1)};
  }

  namespace {

    constexpr char ns_separator = '\x01';

    struct split_name {
      std::string uri;
      std::string local;
      std::string prefix;
    };

    // expat reports `uri SEP local SEP prefix` when triplets are enabled.
    split_name
    split_expat_name(const XML_Char* raw) {
      std::string_view s(raw);
      split_name out;
      auto first = s.find(ns_separator);
      if (first == std::string_view::npos) {
        out.local = s;
        return out;
      }
      out.uri = s.substr(0, first);
      auto rest = s.substr(first + 1);
      auto second = rest.find(ns_separator);
      if (second == std::string_view::npos) {
        out.local = rest;
      } else {
        out.local = rest.substr(0, second);
        out.prefix = rest.substr(second + 1);
      }
      return out;
    }

    struct builder {
      XML_Parser parser = nullptr;
      std::string file;
      std::unique_ptr<node> root;
      std::vector<node*> stack;
      std::vector<namespace_decl> pending_decls;
      std::string failure;
    };

    void XMLCALL
    on_namespace(void* user, const XML_Char* prefix, const XML_Char* uri) {
      auto* b = static_cast<builder*>(user);
      b->pending_decls.push_back({prefix ? prefix : "", uri ? uri : ""});
    }

    void XMLCALL
    on_start(void* user, const XML_Char* name, const XML_Char** atts) {
      auto* b = static_cast<builder*>(user);
      if (!b->failure.empty()) return;
      try {
        auto n = std::make_unique<node>();
        auto parts = split_expat_name(name);
        n->name = qualified_name(parts.uri, parts.local);
        n->prefix = parts.prefix;
        n->line = XML_GetCurrentLineNumber(b->parser);
        n->namespace_decls = std::move(b->pending_decls);
        b->pending_decls.clear();
        for (std::size_t i = 0; atts[i]; i += 2) {
          auto ap = split_expat_name(atts[i]);
          n->attributes.push_back(
            {qualified_name(ap.uri, ap.local), ap.prefix, atts[i + 1]});
        }
        node* raw = n.get();
        if (b->stack.empty()) {
          b->root = std::move(n);
        } else {
          raw->parent = b->stack.back();
          b->stack.back()->children.push_back({std::move(n), {}});
        }
        b->stack.push_back(raw);
      } catch (const std::exception& e) {
        b->failure = e.what();
        XML_StopParser(b->parser, XML_FALSE);
      }
    }

    void XMLCALL
    on_end(void* user, const XML_Char*) {
      auto* b = static_cast<builder*>(user);
      if (!b->stack.empty()) b->stack.pop_back();
    }

    void XMLCALL
    on_text(void* user, const XML_Char* s, int len) {
      auto* b = static_cast<builder*>(user);
      if (b->stack.empty()) return;
      auto& kids = b->stack.back()->children;
      if (kids.empty() || kids.back().element) kids.push_back({nullptr, {}});
      kids.back().text.append(s, static_cast<std::size_t>(len));
    }

  } // namespace

  document
  parse_string(std::string_view text, std::string display_name) {
    builder b;
    b.file = display_name;
    b.parser = XML_ParserCreateNS(nullptr, ns_separator);
    if (!b.parser) throw load_error("cannot allocate XML parser", display_name);
    XML_SetReturnNSTriplet(b.parser, 1);
    XML_SetUserData(b.parser, &b);
    XML_SetElementHandler(b.parser, on_start, on_end);
    XML_SetCharacterDataHandler(b.parser, on_text);
    XML_SetStartNamespaceDeclHandler(b.parser, on_namespace);

    auto status = XML_Parse(b.parser, text.data(), static_cast<int>(text.size()),
                            XML_TRUE);
    std::size_t line = XML_GetCurrentLineNumber(b.parser);
    std::string message;
    if (!b.failure.empty()) {
      message = b.failure;
    } else if (status != XML_STATUS_OK) {
      message = std::string("malformed XML: ") +
                XML_ErrorString(XML_GetErrorCode(b.parser));
    }
    XML_ParserFree(b.parser);
    if (!message.empty()) throw load_error(message, display_name, line);
    if (!b.root) throw load_error("document has no root element", display_name);

    document doc;
    doc.path = display_name;
    doc.root = std::move(b.root);
    return doc;
  }

  document
  parse_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw load_error("cannot open file", path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    auto doc = parse_string(bytes, path.string());
    doc.path = path;
    return doc;
  }

  std::string
  escape_text(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
      switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
      }
    }
    return out;
  }

  std::string
  escape_attribute(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
      switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
      }
    }
    return out;
  }

} // namespace xsdprune::xml
