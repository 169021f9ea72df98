#pragma once

#include <xsdprune/schema_set.hpp>
#include <xsdprune/xsd_loader.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace xsdprune {

  struct emit_options {
    /// Adds a "generated" timestamp to the manifest. Off by default so that
    /// repeated runs produce identical files.
    bool manifest_timestamp = false;
  };

  struct pruned_item {
    component_ref container;
    std::string dropped; ///< display form of the dropped particle/attribute
    std::string reason;
  };

  struct emitted_file {
    std::string target_namespace;
    std::string file_name;
    std::string content;
  };

  struct emit_plan {
    std::map<std::string, std::string> per_namespace; ///< namespace -> file
    std::vector<emitted_file> files;                   ///< sorted by name
    std::vector<pruned_item> pruned;
    std::vector<std::string> warnings;
  };

  /// Renders the retained components of `full` as XSD documents, one per
  /// target namespace. Throws emit_error when a required particle or
  /// attribute would have to be dropped.
  emit_plan
  plan_emission(const schema_set& retained, const loaded_schema& full);

  /// Writes the planned files and manifest.json into out_dir (created if
  /// needed). Each file is written to a temporary name and renamed.
  void
  write_emission(const emit_plan& plan, const std::filesystem::path& out_dir,
                 const emit_options& options = {});

  emit_plan
  emit(const schema_set& retained, const loaded_schema& full,
       const std::filesystem::path& out_dir, const emit_options& options = {});

  std::string
  manifest_json(const emit_plan& plan, const schema_set& retained,
                const emit_options& options = {});

  /// Writes `content` to `file` through a temporary file and a rename.
  void
  write_file_atomically(const std::filesystem::path& file,
                        const std::string& content);

} // namespace xsdprune
