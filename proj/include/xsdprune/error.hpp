#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xsdprune {

  /// Base class for every error raised by the library.
  class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
  };

  /// A schema-set operation would break one of the model invariants
  /// (relation signature, left-uniqueness, acyclic derivation).
  class model_error : public error {
  public:
    using error::error;
  };

  /// Malformed XML, malformed or unsupported XSD, or an unresolvable
  /// import/include. Carries the offending file and line when known.
  class load_error : public error {
  public:
    load_error(const std::string& message, std::string file = {},
               std::size_t line = 0);

    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }

  private:
    std::string file_;
    std::size_t line_;
  };

  /// An instance node could not be matched against the schema set.
  class analysis_error : public error {
  public:
    analysis_error(const std::string& message, std::string document = {},
                   std::string node_path = {});

    const std::string& document() const { return document_; }
    const std::string& node_path() const { return node_path_; }

  private:
    std::string document_;
    std::string node_path_;
  };

  class emit_error : public error {
  public:
    using error::error;
  };

  class usage_error : public error {
  public:
    using error::error;
  };

} // namespace xsdprune
