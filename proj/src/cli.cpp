#include <xsdprune/cli.hpp>

#include <xsdprune/dot_graph.hpp>
#include <xsdprune/emitter.hpp>
#include <xsdprune/error.hpp>
#include <xsdprune/xsd_loader.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <glob.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace xsdprune::cli {

  namespace {

    std::vector<std::filesystem::path>
    xml_files_in(const std::filesystem::path& dir) {
      std::vector<std::filesystem::path> out;
      for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".xml")
          out.push_back(e.path());
      return out;
    }

    load_options
    loader_options(const run_config& config) {
      load_options options;
      std::optional<std::filesystem::path> catalog = config.catalog;
      if (!catalog)
        if (const char* env = std::getenv("XSDPRUNE_CATALOG"); env && *env)
          catalog = env;
      if (catalog) options.namespace_locations = read_catalog_file(*catalog);
      return options;
    }

    loaded_schema
    load(const run_config& config, std::ostream& err) {
      if (config.schemas.empty()) throw usage_error("at least one --schema is required");
      auto loaded = load_schema_set(config.schemas, loader_options(config));
      for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
      return loaded;
    }

    bool
    looks_like_dump(const std::filesystem::path& file) {
      if (file.extension() == ".dump") return true;
      std::ifstream in(file);
      char c = 0;
      while (in.get(c))
        if (!std::isspace(static_cast<unsigned char>(c))) break;
      return in && c != '<';
    }

    schema_set
    load_side(const std::filesystem::path& file, const run_config& config,
              std::ostream& err) {
      if (!std::filesystem::exists(file))
        throw usage_error("no such file: " + file.string());
      if (looks_like_dump(file)) {
        std::ifstream in(file);
        std::stringstream text;
        text << in.rdbuf();
        return parse_canonical_dump(text.str());
      }
      auto loaded = load_schema_set({file}, loader_options(config));
      for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
      return std::move(loaded.schema);
    }

    std::vector<std::string>
    dump_lines(const schema_set& s) {
      std::vector<std::string> lines;
      std::istringstream in(canonical_dump(s));
      for (std::string l; std::getline(in, l);) lines.push_back(l);
      return lines;
    }

    std::string
    analysis_json(const analysis_report& report) {
      nlohmann::ordered_json j;
      j["files"] = nlohmann::ordered_json::array();
      std::size_t warnings = 0, skipped = 0;
      for (const auto& f : report.files) {
        j["files"].push_back({{"path", f.path},
                              {"components", f.components},
                              {"relations", f.relations},
                              {"skipped_subtrees", f.skipped_subtrees},
                              {"warnings", f.warnings}});
        warnings += f.warnings.size();
        skipped += f.skipped_subtrees;
      }
      j["totals"] = {{"files", report.files.size()},
                     {"warnings", warnings},
                     {"skipped_subtrees", skipped}};
      return j.dump(2) + "\n";
    }

    std::string
    extension_of(report_format f) {
      switch (f) {
      case report_format::text: return "txt";
      case report_format::csv: return "csv";
      case report_format::json: return "json";
      }
      return "txt";
    }

    subset_result
    analyze(const run_config& config, const loaded_schema& loaded,
            std::ostream& err) {
      auto files = expand_globs(config.instance_globs);
      analysis_context ctx(loaded, config.mode);
      auto result = subset_files(ctx, files, config.jobs);
      for (const auto& f : result.report.files)
        for (const auto& w : f.warnings) err << "warning: " << w << "\n";
      return result;
    }

    int
    run_subset(const run_config& config, std::ostream& out, std::ostream& err) {
      if (config.instance_globs.empty())
        throw usage_error("subset needs --instances");
      if (!config.out) throw usage_error("subset needs --out");
      auto loaded = load(config, err);
      auto result = analyze(config, loaded, err);

      emit_options options;
      options.manifest_timestamp = config.manifest_timestamp;
      auto plan = emit(result.schema, loaded, *config.out, options);
      for (const auto& w : plan.warnings) err << "warning: " << w << "\n";

      auto comparison =
        compare_metrics(compute_metrics(loaded.schema, config.include_builtins),
                        compute_metrics(result.schema, config.include_builtins));
      auto report = render_comparison(comparison, config.report);
      write_file_atomically(*config.out / "retained.dump",
                            canonical_dump(result.schema));
      write_file_atomically(*config.out / "analysis.json",
                            analysis_json(result.report));
      write_file_atomically(*config.out / ("report." + extension_of(config.report)),
                            report);
      out << report;
      return exit_ok;
    }

    int
    run_metrics(const run_config& config, std::ostream& out, std::ostream& err) {
      auto loaded = load(config, err);
      auto full = compute_metrics(loaded.schema, config.include_builtins);
      std::string text;
      if (config.instance_globs.empty()) {
        text = render_metrics(full, config.report);
      } else {
        auto result = analyze(config, loaded, err);
        text = render_comparison(
          compare_metrics(full, compute_metrics(result.schema, config.include_builtins)),
          config.report);
      }
      if (config.out)
        write_file_atomically(*config.out, text);
      else
        out << text;
      return exit_ok;
    }

    int
    run_diff(const run_config& config, std::ostream& out, std::ostream& err) {
      if (config.diff_inputs.size() != 2)
        throw usage_error("diff needs exactly two inputs: LEFT RIGHT");
      auto left = dump_lines(load_side(config.diff_inputs[0], config, err));
      auto right = dump_lines(load_side(config.diff_inputs[1], config, err));
      std::vector<std::string> only_left, only_right;
      std::set_difference(left.begin(), left.end(), right.begin(), right.end(),
                          std::back_inserter(only_left));
      std::set_difference(right.begin(), right.end(), left.begin(), left.end(),
                          std::back_inserter(only_right));
      std::string text;
      switch (config.report) {
      case report_format::text:
        for (const auto& l : only_left) text += "- " + l + "\n";
        for (const auto& l : only_right) text += "+ " + l + "\n";
        break;
      case report_format::csv:
        text = "side,entry\n";
        for (const auto& l : only_left) text += "left,\"" + l + "\"\n";
        for (const auto& l : only_right) text += "right,\"" + l + "\"\n";
        break;
      case report_format::json: {
        nlohmann::ordered_json j;
        j["equal"] = only_left.empty() && only_right.empty();
        j["only_left"] = only_left;
        j["only_right"] = only_right;
        text = j.dump(2) + "\n";
        break;
      }
      }
      out << text;
      return exit_ok;
    }

    int
    run_graph(const run_config& config, std::ostream& out, std::ostream& err) {
      auto loaded = load(config, err);
      std::string dot;
      if (config.instance_globs.empty()) {
        dot = to_dot(loaded.schema);
      } else {
        dot = to_dot(analyze(config, loaded, err).schema, "subset");
      }
      if (config.out)
        write_file_atomically(*config.out, dot);
      else
        out << dot;
      return exit_ok;
    }

    void
    report_error(const run_config& config, std::ostream& out, std::ostream& err,
                 std::string_view kind, const std::exception& e,
                 nlohmann::ordered_json details = nlohmann::ordered_json::object()) {
      std::string message = e.what();
      auto first_line = message.substr(0, message.find('\n'));
      err << "xsdprune: " << kind << " error: " << first_line << "\n";
      if (message.find('\n') != std::string::npos)
        err << message.substr(message.find('\n') + 1) << "\n";
      if (config.report == report_format::json) {
        nlohmann::ordered_json j;
        j["error"] = {{"kind", kind}, {"message", message}};
        for (auto& [k, v] : details.items()) j["error"][k] = v;
        out << j.dump(2) << "\n";
      }
    }

  } // namespace

  std::vector<std::filesystem::path>
  expand_globs(const std::vector<std::string>& patterns) {
    std::set<std::filesystem::path> found;
    for (const auto& pattern : patterns) {
      std::error_code ec;
      if (std::filesystem::is_directory(pattern, ec)) {
        auto files = xml_files_in(pattern);
        if (files.empty())
          throw usage_error("directory contains no .xml files: " + pattern);
        found.insert(files.begin(), files.end());
        continue;
      }
      glob_t g{};
      int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
      if (rc == GLOB_NOMATCH || (rc == 0 && g.gl_pathc == 0)) {
        ::globfree(&g);
        throw usage_error("no files match '" + pattern + "'");
      }
      if (rc != 0) {
        ::globfree(&g);
        throw usage_error("cannot expand '" + pattern + "'");
      }
      for (std::size_t i = 0; i < g.gl_pathc; ++i)
        found.insert(g.gl_pathv[i]);
      ::globfree(&g);
    }
    return {found.begin(), found.end()};
  }

  int
  run(const run_config& config, std::ostream& out, std::ostream& err) {
    try {
      switch (config.command) {
      case verb::subset: return run_subset(config, out, err);
      case verb::metrics: return run_metrics(config, out, err);
      case verb::diff: return run_diff(config, out, err);
      case verb::graph: return run_graph(config, out, err);
      }
    } catch (const usage_error& e) {
      report_error(config, out, err, "usage", e);
      return exit_usage;
    } catch (const load_error& e) {
      report_error(config, out, err, "load", e,
                   {{"file", e.file()}, {"line", e.line()}});
      return exit_failure;
    } catch (const analysis_error& e) {
      report_error(config, out, err, "analysis", e,
                   {{"document", e.document()}, {"node", e.node_path()}});
      return exit_failure;
    } catch (const emit_error& e) {
      report_error(config, out, err, "emission", e);
      return exit_failure;
    } catch (const error& e) {
      report_error(config, out, err, "model", e);
      return exit_failure;
    } catch (const std::filesystem::filesystem_error& e) {
      report_error(config, out, err, "io", e);
      return exit_failure;
    }
    return exit_failure;
  }

  int
  main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Instance-driven XML Schema subsetting", "xsdprune"};
    app.require_subcommand(1);

    run_config config;
    std::string mode = "strict";
    std::string report = "text";

    auto common = [&](CLI::App* cmd, bool schemas_required) {
      auto* s = cmd->add_option("--schema", config.schemas,
                                "Entry schema file (repeatable)");
      if (schemas_required) s->required();
      cmd->add_option("--catalog", config.catalog,
                      "Namespace catalog (namespaceURI<TAB>path per line)");
      cmd->add_option("--mode", mode, "strict or lenient")
        ->check(CLI::IsMember({"strict", "lenient"}));
      cmd->add_option("--report", report, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
      cmd->add_flag("--include-builtins,!--exclude-builtins",
                    config.include_builtins,
                    "Count built-in XSD types in |T| (default on)");
    };

    auto* subset = app.add_subcommand("subset", "Write the schema subset used by a corpus");
    common(subset, true);
    subset->add_option("--instances", config.instance_globs,
                       "Instance file glob (repeatable)")->required();
    subset->add_option("--out", config.out, "Output directory")->required();
    subset->add_option("--jobs", config.jobs, "Parallel analysis workers")
      ->check(CLI::Range(1u, 1024u));
    subset->add_flag("--manifest-timestamp", config.manifest_timestamp,
                     "Record the generation time in manifest.json");

    auto* metrics = app.add_subcommand("metrics", "Print schema size metrics");
    common(metrics, true);
    metrics->add_option("--instances", config.instance_globs,
                        "Compare against the subset used by these instances");
    metrics->add_option("--out", config.out, "Write the report to a file");
    metrics->add_option("--jobs", config.jobs, "Parallel analysis workers")
      ->check(CLI::Range(1u, 1024u));

    auto* diff = app.add_subcommand("diff", "Compare two schema sets (XSD files or dumps)");
    common(diff, false);
    diff->add_option("inputs", config.diff_inputs, "LEFT RIGHT")->expected(2)->required();

    auto* graph = app.add_subcommand("graph", "Write the relation graph in DOT format");
    common(graph, true);
    graph->add_option("--instances", config.instance_globs,
                      "Graph the subset used by these instances");
    graph->add_option("--out", config.out, "Output file (default: stdout)");
    graph->add_option("--jobs", config.jobs, "Parallel analysis workers")
      ->check(CLI::Range(1u, 1024u));

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return exit_ok;
    } catch (const CLI::ParseError& e) {
      err << "xsdprune: usage error: " << e.what() << "\n";
      err << "run 'xsdprune --help' for usage\n";
      return exit_usage;
    }

    config.mode = mode == "lenient" ? analysis_mode::lenient : analysis_mode::strict;
    config.report = *report_format_from_name(report);
    if (*subset) config.command = verb::subset;
    else if (*metrics) config.command = verb::metrics;
    else if (*diff) config.command = verb::diff;
    else config.command = verb::graph;
    return run(config, out, err);
  }

} // namespace xsdprune::cli
