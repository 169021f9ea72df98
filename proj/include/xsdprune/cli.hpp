#pragma once

#include <xsdprune/analyzer.hpp>
#include <xsdprune/metrics.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace xsdprune::cli {

  enum class verb { subset, metrics, diff, graph };

  struct run_config {
    verb command = verb::subset;
    std::vector<std::filesystem::path> schemas;
    std::optional<std::filesystem::path> catalog;
    std::vector<std::string> instance_globs;
    std::optional<std::filesystem::path> out;
    analysis_mode mode = analysis_mode::strict;
    report_format report = report_format::text;
    bool include_builtins = true;
    unsigned jobs = 1;
    bool manifest_timestamp = false;
    std::vector<std::filesystem::path> diff_inputs; ///< LEFT RIGHT
  };

  inline constexpr int exit_ok = 0;
  inline constexpr int exit_failure = 1;
  inline constexpr int exit_usage = 2;

  /// Expands each pattern with glob(3). A directory stands for the *.xml
  /// files directly inside it. Results are sorted and de-duplicated.
  /// Throws usage_error for a pattern that matches nothing.
  std::vector<std::filesystem::path>
  expand_globs(const std::vector<std::string>& patterns);

  /// Runs a parsed configuration. Results go to `out`, warnings and error
  /// summaries to `err`.
  int
  run(const run_config& config, std::ostream& out, std::ostream& err);

  /// Parses the command line and runs it.
  int
  main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace xsdprune::cli
