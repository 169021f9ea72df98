#include <xsdprune/error.hpp>

namespace xsdprune {

  namespace {

    std::string
    located(const std::string& message, const std::string& file,
            std::size_t line) {
      if (file.empty()) return message;
      if (line == 0) return file + ": " + message;
      return file + ":" + std::to_string(line) + ": " + message;
    }

  } // namespace

  load_error::load_error(const std::string& message, std::string file,
                         std::size_t line)
    : error(located(message, file, line)), file_(std::move(file)), line_(line) {
  }

  analysis_error::analysis_error(const std::string& message,
                                 std::string document, std::string node_path)
    : error((document.empty() ? std::string() : document + ": ") +
            (node_path.empty() ? std::string() : node_path + ": ") + message)
    , document_(std::move(document))
    , node_path_(std::move(node_path)) {}

} // namespace xsdprune
