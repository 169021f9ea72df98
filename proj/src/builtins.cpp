#include <xsdprune/builtins.hpp>

#include <array>
#include <utility>

namespace xsdprune::builtins {

  namespace {

    using entry = std::pair<std::string_view, std::string_view>;

    // (type, base); anyType is the root and has an empty base.
    constexpr std::array<entry, 46> hierarchy = {{
      {"anyType", ""},
      {"anySimpleType", "anyType"},
      {"string", "anySimpleType"},
      {"boolean", "anySimpleType"},
      {"decimal", "anySimpleType"},
      {"float", "anySimpleType"},
      {"double", "anySimpleType"},
      {"duration", "anySimpleType"},
      {"dateTime", "anySimpleType"},
      {"time", "anySimpleType"},
      {"date", "anySimpleType"},
      {"gYearMonth", "anySimpleType"},
      {"gYear", "anySimpleType"},
      {"gMonthDay", "anySimpleType"},
      {"gDay", "anySimpleType"},
      {"gMonth", "anySimpleType"},
      {"hexBinary", "anySimpleType"},
      {"base64Binary", "anySimpleType"},
      {"anyURI", "anySimpleType"},
      {"QName", "anySimpleType"},
      {"NOTATION", "anySimpleType"},
      {"normalizedString", "string"},
      {"token", "normalizedString"},
      {"language", "token"},
      {"NMTOKEN", "token"},
      {"NMTOKENS", "anySimpleType"},
      {"Name", "token"},
      {"NCName", "Name"},
      {"ID", "NCName"},
      {"IDREF", "NCName"},
      {"IDREFS", "anySimpleType"},
      {"ENTITY", "NCName"},
      {"ENTITIES", "anySimpleType"},
      {"integer", "decimal"},
      {"nonPositiveInteger", "integer"},
      {"negativeInteger", "nonPositiveInteger"},
      {"long", "integer"},
      {"int", "long"},
      {"short", "int"},
      {"byte", "short"},
      {"nonNegativeInteger", "integer"},
      {"unsignedLong", "nonNegativeInteger"},
      {"unsignedInt", "unsignedLong"},
      {"unsignedShort", "unsignedInt"},
      {"unsignedByte", "unsignedShort"},
      {"positiveInteger", "nonNegativeInteger"},
    }};

    const entry*
    find(std::string_view local) {
      for (const auto& e : hierarchy)
        if (e.first == local) return &e;
      return nullptr;
    }

  } // namespace

  bool
  is_type_name(std::string_view local) {
    return find(local) != nullptr;
  }

  std::optional<std::string_view>
  base_of(std::string_view local) {
    const auto* e = find(local);
    if (!e || e->second.empty()) return std::nullopt;
    return e->second;
  }

  bool
  derives_from(std::string_view derived, std::string_view base) {
    std::optional<std::string_view> cur = derived;
    while (cur) {
      if (*cur == base) return true;
      cur = base_of(*cur);
    }
    return false;
  }

} // namespace xsdprune::builtins
