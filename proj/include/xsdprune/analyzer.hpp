#pragma once

#include <xsdprune/instance.hpp>
#include <xsdprune/schema_catalog.hpp>
#include <xsdprune/schema_set.hpp>
#include <xsdprune/xsd_loader.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace xsdprune {

  enum class analysis_mode { strict, lenient };

  /// Read-only view of one loaded schema set. Safe to share between
  /// threads.
  struct analysis_context {
    const schema_set& schema;
    const schema_catalog& catalog;
    const source_index& sources;
    analysis_mode mode = analysis_mode::strict;

    explicit analysis_context(const loaded_schema& loaded,
                              analysis_mode m = analysis_mode::strict)
      : schema(loaded.schema), catalog(loaded.catalog),
        sources(loaded.sources), mode(m) {}
  };

  /// How an instance element was matched.
  struct element_match {
    component_ref decl;
    /// Particle through which the match happened; empty for roots.
    std::optional<element_path> path;
    /// Set when decl substitutes for the head referenced by `path`.
    bool via_substitution = false;
    /// Other particles with the same name in the same content model.
    std::vector<element_path> alternatives;
  };

  /// Declaration matching `node`: a global element for roots, otherwise a
  /// particle of the parent's dynamic type (direct name match first, then
  /// substitution-group members of referenced heads). Throws analysis_error
  /// when there is none.
  component_ref
  element_decl(const analysis_context& ctx, const instance_node& node,
               const std::optional<component_ref>& parent_type);

  /// Dynamic type of `node`: xsi:type when present (checked to derive from
  /// the declared type), otherwise the declared type of `decl`. nullopt
  /// stands for anyType.
  std::optional<component_ref>
  type_of(const analysis_context& ctx, const instance_node& node,
          const component_ref& decl);

  /// Type or model group whose own content holds the particle for `decl`
  /// within dynamic_type's effective content model.
  component_ref
  container_of(const analysis_context& ctx, const component_ref& decl,
               const component_ref& dynamic_type);

  std::vector<component_ref>
  ancestors(const analysis_context& ctx, const component_ref& type);

  /// Subset used by the fragment rooted at `node`, matched to `decl`.
  schema_set
  schema_subset_used_in(const analysis_context& ctx, const instance_node& node,
                        const component_ref& decl);

  struct file_report {
    std::string path;
    std::size_t components = 0;
    std::size_t relations = 0;
    std::size_t skipped_subtrees = 0;
    std::vector<std::string> warnings;
  };

  struct analysis_report {
    std::vector<file_report> files; ///< corpus order
  };

  struct subset_result {
    schema_set schema;
    analysis_report report;
  };

  /// Union of the per-document subsets. With jobs > 1 documents are
  /// analyzed concurrently; the result does not depend on it.
  subset_result
  subset_schemas(const analysis_context& ctx,
                 const std::vector<instance_document>& corpus,
                 unsigned jobs = 1);

  /// Same, reading each file (parsing happens on the worker threads).
  subset_result
  subset_files(const analysis_context& ctx,
               const std::vector<std::filesystem::path>& corpus,
               unsigned jobs = 1);

} // namespace xsdprune
