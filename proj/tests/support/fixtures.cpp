#include "fixtures.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <sys/wait.h>

namespace xsdprune::testing {

  namespace fs = std::filesystem;

  fs::path
  fixtures_dir() {
    return XSDPRUNE_FIXTURES_DIR;
  }

  load_options
  fixture::options() const {
    load_options o;
    if (catalog) o.namespace_locations = read_catalog_file(*catalog);
    return o;
  }

  loaded_schema
  fixture::load() const {
    return load_schema_set(schemas, options());
  }

  std::vector<fs::path>
  fixture::catalog_schemas() const {
    std::vector<fs::path> out;
    if (catalog)
      for (const auto& [ns, file] : read_catalog_file(*catalog))
        out.push_back(file);
    return out;
  }

  fixture
  load_fixture(const std::string& name) {
    fixture f;
    f.name = name;
    f.dir = fixtures_dir() / name;
    auto j = nlohmann::json::parse(read_text(f.dir / "fixture.json"));
    for (const auto& s : j.at("schemas"))
      f.schemas.push_back(f.dir / s.get<std::string>());
    if (j.contains("catalog"))
      f.catalog = f.dir / j.at("catalog").get<std::string>();
    for (const auto& e : fs::directory_iterator(f.dir / "corpus"))
      if (e.path().extension() == ".xml") f.corpus.push_back(e.path());
    std::sort(f.corpus.begin(), f.corpus.end());
    return f;
  }

  std::vector<fixture>
  all_fixtures() {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(fixtures_dir()))
      if (fs::exists(e.path() / "fixture.json"))
        names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    std::vector<fixture> out;
    for (const auto& n : names) out.push_back(load_fixture(n));
    return out;
  }

  temp_dir::temp_dir() {
    std::string pattern = (fs::temp_directory_path() / "xsdprune-XXXXXX").string();
    if (!mkdtemp(pattern.data()))
      throw std::runtime_error("cannot create a temporary directory");
    path_ = pattern;
  }

  temp_dir::~temp_dir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }

  fs::path
  temp_dir::write(const std::string& relative, const std::string& text) const {
    auto file = path_ / relative;
    fs::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + file.string());
    return file;
  }

  std::string
  read_text(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  loaded_schema
  load_texts(const temp_dir& dir,
             const std::vector<std::pair<std::string, std::string>>& files,
             const load_options& options) {
    fs::path entry;
    for (const auto& [name, text] : files) {
      auto p = dir.write(name, text);
      if (entry.empty()) entry = p;
    }
    return load_schema_set({entry}, options);
  }

  command_result
  run_command(const std::string& command) {
    command_result r;
    std::string full = command + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buffer{};
    std::size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
      r.output.append(buffer.data(), n);
    int status = pclose(pipe);
    r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  std::string
  shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
      if (c == '\'') out += "'\\''";
      else out += c;
    }
    return out + "'";
  }

} // namespace xsdprune::testing
