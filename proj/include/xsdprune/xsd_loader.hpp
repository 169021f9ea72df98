#pragma once

#include <xsdprune/schema_catalog.hpp>
#include <xsdprune/schema_set.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace xsdprune {

  struct load_options {
    /// namespace URI -> schema file, consulted before schemaLocation hints
    /// of xs:import.
    std::map<std::string, std::filesystem::path> namespace_locations;
  };

  /// Result of loading a schema set: the full component/relation model plus
  /// everything needed to analyze instances and re-emit XSD.
  struct loaded_schema {
    schema_set schema;
    source_index sources;
    schema_catalog catalog;
    std::vector<std::string> warnings;
  };

  /// Loads the entry files and everything reachable through xs:include and
  /// xs:import. Throws load_error (with file and line) for malformed XML or
  /// XSD, unresolved imports/includes, duplicate global definitions and
  /// unsupported constructs (redefine, notation, XSD 1.1).
  loaded_schema
  load_schema_set(const std::vector<std::filesystem::path>& entry_files,
                  const load_options& options = {});

  /// Reads a catalog file: one `namespaceURI<TAB>path` per line; relative
  /// paths are relative to the catalog file. Blank lines and lines starting
  /// with '#' are skipped.
  std::map<std::string, std::filesystem::path>
  read_catalog_file(const std::filesystem::path& file);

  /// Namespace reserved for the synthetic names of anonymous types declared
  /// in `target_namespace`.
  std::string
  anonymous_namespace(const std::string& target_namespace);

  bool
  is_anonymous_namespace(const std::string& uri);

} // namespace xsdprune
