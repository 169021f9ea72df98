// Acceptance run: one PASS, FAIL or SKIP line per criterion. Exits
// non-zero when any criterion fails.

#include "example_sets.hpp"
#include "fixtures.hpp"
#include "properties.hpp"

#include <xsdprune/analyzer.hpp>
#include <xsdprune/cli.hpp>
#include <xsdprune/emitter.hpp>
#include <xsdprune/metrics.hpp>

#include <chrono>
#include <cstdlib>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace xsdprune;
namespace fs = std::filesystem;
namespace t = xsdprune::testing;
namespace ex = xsdprune::testing::example;

namespace {

  enum class verdict { pass, fail, skip };

  struct outcome {
    verdict result = verdict::fail;
    std::string detail;
  };

  outcome
  pass(std::string d) {
    return {verdict::pass, std::move(d)};
  }

  outcome
  fail(std::string d) {
    return {verdict::fail, std::move(d)};
  }

  outcome
  skip(std::string d) {
    return {verdict::skip, std::move(d)};
  }

  // Pinned tolerances.
  constexpr double example_seconds = 1.0;
  constexpr std::size_t property_trials = 1000;
  constexpr std::size_t shuffles = 10;
  constexpr std::size_t sos_total_c = 3333;
  constexpr double sos_total_c_tolerance = 0.10;
  constexpr double sos_min_reduction = 0.70;
  constexpr double sos_seconds = 60.0;

  double
  seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  std::string
  fixed(double v, int digits = 2) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(digits);
    s << v;
    return s.str();
  }

  subset_result
  subset_corpus(const loaded_schema& loaded, const std::vector<fs::path>& corpus) {
    analysis_context ctx(loaded);
    return subset_files(ctx, corpus);
  }

  // 1. The example schema and the instance 1 subset, exactly.
  outcome
  example_exactness() {
    auto start = std::chrono::steady_clock::now();
    auto fx = t::load_fixture("example");
    auto loaded = fx.load();
    if (loaded.schema != ex::full_set())
      return fail("loaded set differs from the listing:\n" + canonical_dump(loaded.schema));
    auto one = subset_corpus(loaded, {fx.dir / "corpus" / "instance1.xml"}).schema;
    if (canonical_dump(one) != canonical_dump(ex::instance1_subset()))
      return fail("instance 1 subset differs:\n" + canonical_dump(one));
    auto elapsed = seconds_since(start);
    if (elapsed >= example_seconds) return fail("took " + fixed(elapsed) + " s");
    return pass("9 components, 10 relations; instance 1 keeps 6 and 5 (" +
                fixed(elapsed, 3) + " s)");
  }

  // 2. xsi:type pulls in the derived type and its content.
  outcome
  dynamic_typing() {
    auto fx = t::load_fixture("example");
    auto loaded = fx.load();
    auto both = subset_corpus(loaded, fx.corpus).schema;
    if (both != ex::both_instances_subset())
      return fail("subset differs:\n" + canonical_dump(both));
    auto child = ex::type("Child");
    bool ok = both.contains(child) &&
              both.contains(ex::inner_element("Child", "chdElem")) &&
              both.has_pair(relation_kind::is_derived_from, child, ex::type("Base")) &&
              !both.contains(ex::global_element("baseElem2")) &&
              !both.has_pair(relation_kind::reference, ex::type("Base"),
                             ex::global_element("baseElem2"));
    if (!ok) return fail("expected members missing or excluded members present");
    return pass("Child, Child:chdElem, isDerivedFrom(Child, Base) kept; baseElem2 excluded");
  }

  std::string
  python() {
    return XSDPRUNE_PYTHON;
  }

  t::command_result
  validate(const std::vector<fs::path>& schemas, const std::vector<fs::path>& instances) {
    std::string cmd = t::shell_quote(python()) + " " + t::shell_quote(XSDPRUNE_ORACLE);
    for (const auto& s : schemas) cmd += " --schema " + t::shell_quote(s.string());
    for (const auto& i : instances) cmd += " " + t::shell_quote(i.string());
    return t::run_command(cmd);
  }

  std::vector<fs::path>
  emitted_files(const emit_plan& plan, const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& f : plan.files) files.push_back(dir / f.file_name);
    return files;
  }

  // 3. Every corpus document validates against the emitted subset under
  // an independent validator.
  outcome
  validator_oracle() {
    auto probe = t::run_command(t::shell_quote(python()) + " -c 'import xmlschema'");
    if (probe.status != 0) return skip("python xmlschema not available: " + probe.output);

    t::temp_dir dir;
    std::size_t documents = 0, fixtures = 0;
    std::string failures;
    for (const auto& fx : t::all_fixtures()) {
      auto loaded = fx.load();
      auto result = subset_corpus(loaded, fx.corpus);
      auto out = dir.path() / fx.name;
      auto plan = emit(result.schema, loaded, out);

      auto originals = fx.schemas;
      for (const auto& s : fx.catalog_schemas()) originals.push_back(s);
      auto before = validate(originals, fx.corpus);
      if (before.status != 0)
        failures += fx.name + " (original schema rejects the corpus): " + before.output;
      auto after = validate(emitted_files(plan, out), fx.corpus);
      if (after.status != 0) failures += fx.name + ": " + after.output;
      documents += fx.corpus.size();
      ++fixtures;
    }
    if (fixtures < 5) failures += "only " + std::to_string(fixtures) + " fixtures\n";

    // Negative control: instance 2 needs Child, which the instance 1
    // subset drops, so the validator has to reject it.
    auto fx = t::load_fixture("example");
    auto loaded = fx.load();
    auto one = subset_corpus(loaded, {fx.dir / "corpus" / "instance1.xml"}).schema;
    auto out = dir.path() / "control";
    auto plan = emit(one, loaded, out);
    auto control = validate(emitted_files(plan, out), {fx.dir / "corpus" / "instance2.xml"});
    if (control.status != 1)
      failures += "negative control was not rejected: " + control.output;

    if (!failures.empty()) return fail(failures);
    return pass(std::to_string(documents) + " documents in " + std::to_string(fixtures) +
                " fixtures valid against their pruned schemas; negative control rejected");
  }

  // 4. Algebraic and analyzer properties on random schemas.
  outcome
  property_suite() {
    auto start = std::chrono::steady_clock::now();
    auto algebra = t::set_algebra_properties(1, property_trials);
    auto analyzer = t::analyzer_properties(1, property_trials, shuffles);
    std::string failures = t::describe(algebra) + t::describe(analyzer);
    if (!failures.empty()) return fail(failures);
    return pass(std::to_string(algebra.trials) + " set-algebra trials, " +
                std::to_string(analyzer.trials) + " random corpora with " +
                std::to_string(shuffles) + " shuffles each, " +
                std::to_string(algebra.checks + analyzer.checks) + " checks (" +
                fixed(seconds_since(start), 1) + " s)");
  }

  // 5. Emit, reload, compare in both directions.
  outcome
  round_trip() {
    t::temp_dir dir;
    std::string failures;
    std::size_t fixtures = 0;
    for (const auto& fx : t::all_fixtures()) {
      auto loaded = fx.load();
      auto retained = subset_corpus(loaded, fx.corpus).schema;
      auto out = dir.path() / fx.name;
      auto plan = emit(retained, loaded, out);
      auto back = load_schema_set(emitted_files(plan, out));
      if (!is_subset_of(back.schema, retained) || !is_subset_of(retained, back.schema))
        failures += fx.name + " differs after reload\n";
      ++fixtures;
    }
    auto random = t::round_trip_properties(20000, 200);
    failures += t::describe(random);
    if (!failures.empty()) return fail(failures);
    return pass(std::to_string(fixtures) + " fixtures and " +
                std::to_string(random.trials) + " random corpora reload to the same set");
  }

  std::vector<std::string>
  split_paths(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == ':' || c == ' ' || c == '\n') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  }

  // 6. The sensor-service schema stack, when one is supplied.
  outcome
  sos_reproduction() {
    const char* schemas = std::getenv("XSDPRUNE_SOS_SCHEMAS");
    const char* corpus = std::getenv("XSDPRUNE_SOS_CORPUS");
    if (!schemas || !*schemas || !corpus || !*corpus)
      return skip("set XSDPRUNE_SOS_SCHEMAS and XSDPRUNE_SOS_CORPUS (and optionally "
                  "XSDPRUNE_SOS_CATALOG) to run against the SOS 1.0 schema stack");
    auto start = std::chrono::steady_clock::now();
    try {
      std::vector<fs::path> entry;
      for (const auto& p : split_paths(schemas)) entry.emplace_back(p);
      load_options options;
      if (const char* cat = std::getenv("XSDPRUNE_SOS_CATALOG"); cat && *cat)
        options.namespace_locations = read_catalog_file(cat);
      auto loaded = load_schema_set(entry, options);
      auto files = cli::expand_globs(split_paths(corpus));

      analysis_context ctx(loaded, analysis_mode::lenient);
      auto result = subset_files(ctx, files, 4);
      auto full = compute_metrics(loaded.schema);
      auto reduced = compute_metrics(result.schema);

      std::set<std::string> roots;
      for (const auto& f : files) roots.insert(read_instance(f).root.name.local_name());

      double deviation = std::abs(static_cast<double>(full.total_c()) - sos_total_c) / sos_total_c;
      double reduction = full.total_c() == 0
                           ? 0.0
                           : 1.0 - static_cast<double>(reduced.total_c()) / full.total_c();
      double elapsed = seconds_since(start);
      std::string root_list;
      for (const auto& r : roots) root_list += (root_list.empty() ? "" : ",") + r;
      std::string detail = "Total_C " + std::to_string(full.total_c()) + " -> " +
                           std::to_string(reduced.total_c()) + " (" +
                           fixed(100 * reduction, 1) + "% reduction, " +
                           fixed(100 * deviation, 1) + "% from 3333), " +
                           std::to_string(files.size()) + " documents, roots " +
                           root_list + ", " + fixed(elapsed, 1) + " s";
      if (deviation > sos_total_c_tolerance || reduction < sos_min_reduction ||
          elapsed >= sos_seconds)
        return fail(detail);
      return pass(detail);
    } catch (const std::exception& e) {
      return fail(std::string("could not process the schema stack: ") + e.what());
    }
  }

  std::map<std::string, std::string>
  directory_bytes(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
      if (e.is_regular_file())
        files[fs::relative(e.path(), dir).string()] = t::read_text(e.path());
    return files;
  }

  // 7. Two runs of each verb give the same bytes.
  outcome
  determinism() {
    t::temp_dir dir;
    auto fx = t::load_fixture("library");
    std::string schema_args;
    for (const auto& s : fx.schemas) schema_args += " --schema " + t::shell_quote(s.string());
    schema_args += " --catalog " + t::shell_quote(fx.catalog->string());
    auto corpus = " --instances " + t::shell_quote((fx.dir / "corpus").string());
    std::string cli = t::shell_quote(XSDPRUNE_CLI_PATH);

    std::vector<std::string> verbs = {
      "subset" + schema_args + corpus + " --jobs 4 --report json --out ",
      "metrics" + schema_args + corpus + " --report csv --out ",
      "graph" + schema_args + corpus + " --out ",
      "diff --report json " + t::shell_quote(fx.schemas.front().string()) + " " +
        t::shell_quote(fx.schemas.front().string()) + " --catalog " +
        t::shell_quote(fx.catalog->string()) + " > ",
    };
    std::string failures;
    for (std::size_t v = 0; v < verbs.size(); ++v) {
      for (int run = 0; run < 2; ++run) {
        auto target = dir.path() / ("run" + std::to_string(run)) / ("verb" + std::to_string(v));
        fs::create_directories(target.parent_path());
        auto r = t::run_command(cli + " " + verbs[v] + t::shell_quote(target.string()));
        if (r.status != 0) failures += "verb " + std::to_string(v) + " failed: " + r.output;
      }
    }
    if (!failures.empty()) return fail(failures);
    auto a = directory_bytes(dir.path() / "run0");
    auto b = directory_bytes(dir.path() / "run1");
    if (a != b) return fail("outputs differ between runs");
    return pass(std::to_string(a.size()) + " artifacts from subset, metrics, graph and diff "
                "identical across two runs");
  }

} // namespace

int
main() {
  const std::vector<std::pair<std::string, std::function<outcome()>>> criteria = {
    {"example schema exactness", example_exactness},
    {"dynamic typing", dynamic_typing},
    {"validator oracle", validator_oracle},
    {"property suite", property_suite},
    {"round trip", round_trip},
    {"SOS size table", sos_reproduction},
    {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const char* word = o.result == verdict::pass ? "PASS" : o.result == verdict::fail ? "FAIL" : "SKIP";
    if (o.result == verdict::fail) ++failed;
    std::string detail = o.detail;
    while (!detail.empty() && detail.back() == '\n') detail.pop_back();
    std::cout << word << " " << (i + 1) << " " << criteria[i].first << ": " << detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
