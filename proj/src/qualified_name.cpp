#include <xsdprune/qualified_name.hpp>

#include <xsdprune/error.hpp>

namespace xsdprune {

  namespace {

    bool
    is_name_start(unsigned char c) {
      return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' ||
             c >= 0x80;
    }

    bool
    is_name_char(unsigned char c) {
      return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' ||
             c == '.';
    }

  } // namespace

  bool
  is_ncname(std::string_view name) {
    if (name.empty() || !is_name_start(static_cast<unsigned char>(name[0])))
      return false;
    for (char c : name.substr(1))
      if (!is_name_char(static_cast<unsigned char>(c))) return false;
    return true;
  }

  qualified_name::qualified_name(std::string namespace_uri,
                                 std::string local_name)
    : namespace_uri_(std::move(namespace_uri))
    , local_name_(std::move(local_name)) {
    if (!is_ncname(local_name_))
      throw model_error("'" + local_name_ + "' is not a valid NCName");
  }

  std::string
  qualified_name::clark() const {
    return "{" + namespace_uri_ + "}" + local_name_;
  }

} // namespace xsdprune
