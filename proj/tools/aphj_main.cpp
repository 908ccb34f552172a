#include "aphj/errors.hpp"
#include "aphj/scenarios.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw aphj::ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw aphj::RuntimeFailure("cannot write '" + path.string() + "'");
  out << content;
}

// --override a.b.c=VALUE creates the nested path in the user config; VALUE
// is parsed as JSON when it is one, otherwise taken as a string
void apply_override(json& user, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    throw aphj::ConfigError("override must look like key=value, got '" + kv + "'");
  const std::string path = kv.substr(0, eq);
  const std::string raw = kv.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::exception&) {
    value = raw;
  }

  json* node = &user;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty())
      throw aphj::ConfigError("override path '" + path + "' has an empty segment");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    if (!node->is_object()) *node = json::object();
    start = dot + 1;
  }
}

void print_checks(const aphj::ScenarioResult& r) {
  for (const auto& line : r.checks) std::cout << "  " << line << "\n";
}

int cmd_run(const std::string& configPath, std::string outDir,
            const std::vector<std::string>& overrides) {
  json user;
  try {
    user = json::parse(read_file(configPath));
  } catch (const json::exception& ex) {
    throw aphj::ConfigError(std::string("config: invalid JSON: ") + ex.what());
  }
  for (const auto& kv : overrides) apply_override(user, kv);

  const aphj::ScenarioResult r = aphj::run_scenario(user.dump());

  if (outDir.empty()) outDir = "out/" + r.name;
  const std::filesystem::path dir(outDir);
  std::filesystem::create_directories(dir);
  write_file(dir / "manifest.json", r.manifestJson);
  write_file(dir / "report.json", r.reportJson);
  for (const auto& f : r.files) write_file(dir / f.name, f.content);

  std::cout << r.name << "\n";
  print_checks(r);
  std::cout << (r.pass ? "PASS" : "FAIL") << " (artifacts in " << dir.string()
            << ")\n";
  return r.pass ? 0 : 1;
}

int cmd_list(bool asJson) {
  const auto scenarios = aphj::list_scenarios();
  if (asJson) {
    json out = json::array();
    for (const auto& s : scenarios)
      out.push_back({{"name", s.name}, {"description", s.description}});
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::size_t w = 0;
  for (const auto& s : scenarios) w = std::max(w, s.name.size());
  for (const auto& s : scenarios)
    std::cout << s.name << std::string(w - s.name.size() + 2, ' ')
              << s.description << "\n";
  return 0;
}

int cmd_verify(const std::string& scenario) {
  std::vector<std::string> names;
  if (!scenario.empty()) {
    names.push_back(scenario);
  } else {
    for (const auto& s : aphj::list_scenarios()) names.push_back(s.name);
  }
  bool all = true;
  for (const auto& name : names) {
    const aphj::ScenarioResult r =
        aphj::run_scenario(std::string("{\"scenario\":\"") + name + "\"}");
    std::cout << r.name << "\n";
    print_checks(r);
    all = all && r.pass;
  }
  std::cout << (all ? "PASS" : "FAIL") << "\n";
  return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"almost-periodic Hamilton-Jacobi verification scenarios"};
  app.require_subcommand(1);

  std::string configPath, outDir, verifyName;
  std::vector<std::string> overrides;
  bool listJson = false;

  CLI::App* run = app.add_subcommand("run", "run one scenario from a JSON config");
  run->add_option("config", configPath, "JSON config file with a 'scenario' key")
      ->required();
  run->add_option("--out", outDir, "output directory (default out/<scenario>)");
  run->add_option("--override", overrides,
                  "dotted-path override, e.g. solve.gridN=200 (repeatable)");

  CLI::App* list = app.add_subcommand("list", "list registered scenarios");
  list->add_flag("--json", listJson, "machine-readable listing");

  CLI::App* verify =
      app.add_subcommand("verify", "run scenario checks without writing artifacts");
  verify->add_option("scenario", verifyName, "scenario name (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(configPath, outDir, overrides);
    if (list->parsed()) return cmd_list(listJson);
    return cmd_verify(verifyName);
  } catch (const aphj::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const aphj::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
