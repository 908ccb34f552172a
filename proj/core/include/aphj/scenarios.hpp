#ifndef APHJ_SCENARIOS_HPP
#define APHJ_SCENARIOS_HPP

#include <string>
#include <vector>

namespace aphj {

struct ScenarioInfo {
  std::string name;
  std::string description;
};

// One artifact to persist, path relative to the chosen output directory.
struct ScenarioFile {
  std::string name;
  std::string content;
};

struct ScenarioResult {
  std::string name;
  bool pass = false;
  std::vector<std::string> checks; // one "[PASS]/[FAIL] label: value rel bound" line each
  std::string reportJson;          // measured values, relations and bounds
  std::string manifestJson;        // resolved config echo plus artifact list
  std::vector<ScenarioFile> files;
};

// The registry is code: names, pinned parameters and verdict logic live
// here so every verification run is invocable by name and reproducible.
std::vector<ScenarioInfo> list_scenarios();

// Defaults for one scenario as a JSON object; this is exactly the tree a
// user config may override key by key.
std::string scenario_default_config(const std::string& name);

// configJson must be a JSON object carrying {"scenario": <name>}; every
// other key must exist in the scenario's default tree with a matching type,
// otherwise ConfigError.  Runs the scenario and returns its verdict plus
// all artifacts; nothing is written to disk here.
ScenarioResult run_scenario(const std::string& configJson);

} // namespace aphj

#endif
