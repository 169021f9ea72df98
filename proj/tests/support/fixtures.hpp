#pragma once

#include <xsdprune/xsd_loader.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace xsdprune::testing {

  std::filesystem::path
  fixtures_dir();

  /// A bundled schema set with its corpus, described by fixture.json.
  struct fixture {
    std::string name;
    std::filesystem::path dir;
    std::vector<std::filesystem::path> schemas;
    std::optional<std::filesystem::path> catalog;
    std::vector<std::filesystem::path> corpus; ///< sorted

    load_options
    options() const;

    loaded_schema
    load() const;

    /// Schema files the catalog maps to (needed by an outside validator
    /// for imports without schemaLocation).
    std::vector<std::filesystem::path>
    catalog_schemas() const;
  };

  fixture
  load_fixture(const std::string& name);

  /// Every directory under fixtures_dir() holding a fixture.json, by name.
  std::vector<fixture>
  all_fixtures();

  /// Fresh directory under the system temp dir, removed on destruction.
  class temp_dir {
  public:
    temp_dir();
    ~temp_dir();
    temp_dir(const temp_dir&) = delete;
    temp_dir& operator=(const temp_dir&) = delete;

    const std::filesystem::path& path() const { return path_; }

    std::filesystem::path
    write(const std::string& relative, const std::string& text) const;

  private:
    std::filesystem::path path_;
  };

  std::string
  read_text(const std::filesystem::path& file);

  /// Loads schema documents given as text; the first one is the entry.
  loaded_schema
  load_texts(const temp_dir& dir,
             const std::vector<std::pair<std::string, std::string>>& files,
             const load_options& options = {});

  struct command_result {
    int status = -1;
    std::string output; ///< stdout and stderr combined
  };

  /// Runs a shell command with /bin/sh.
  command_result
  run_command(const std::string& command);

  std::string
  shell_quote(const std::string& s);

} // namespace xsdprune::testing
