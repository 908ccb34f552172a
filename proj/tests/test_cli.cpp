#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliOutcome {
  int code = -1;
  std::string output;
};

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "aphj_cli_scratch";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(static_cast<bool>(in));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  REQUIRE(static_cast<bool>(out));
  out << content;
}

CliOutcome run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path cap = scratch() / ("capture_" + std::to_string(counter++) + ".txt");
  const std::string cmd = std::string("\"") + APHJ_CLI_PATH + "\" " + args + " > \"" +
                          cap.string() + "\" 2>&1";
  const int ret = std::system(cmd.c_str());
  CliOutcome r;
  r.code = WIFEXITED(ret) ? WEXITSTATUS(ret) : -1;
  r.output = slurp(cap);
  return r;
}

} // namespace

TEST_CASE("listing") {
  const CliOutcome plain = run_cli("list");
  CHECK(plain.code == 0);
  CHECK(plain.output.find("constant-sanity") != std::string::npos);
  int rows = 0;
  std::istringstream in(plain.output);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) ++rows;
  CHECK(rows >= 12);

  const CliOutcome machine = run_cli("list --json");
  CHECK(machine.code == 0);
  const json j = json::parse(machine.output);
  REQUIRE(j.is_array());
  CHECK(j.size() >= 12);
  for (const auto& e : j) {
    CHECK(e.contains("name"));
    CHECK(e.contains("description"));
  }
}

TEST_CASE("running a scenario writes its artifacts") {
  const fs::path cfg = scratch() / "constant.json";
  spit(cfg, "{\"scenario\": \"constant-sanity\"}\n");
  const fs::path out1 = scratch() / "run1";

  const CliOutcome r = run_cli("run \"" + cfg.string() + "\" --out \"" + out1.string() + "\"");
  CHECK(r.code == 0);
  CHECK(r.output.find("constant-sanity") != std::string::npos);
  CHECK(r.output.find("PASS (artifacts in ") != std::string::npos);

  REQUIRE(fs::exists(out1 / "manifest.json"));
  REQUIRE(fs::exists(out1 / "report.json"));
  const json man = json::parse(slurp(out1 / "manifest.json"));
  CHECK(man.at("scenario") == "constant-sanity");
  CHECK(man.at("pass").get<bool>());
  for (const auto& f : man.at("files"))
    CHECK(fs::exists(out1 / f.get<std::string>()));

  SUBCASE("a rerun reproduces every byte") {
    const fs::path out2 = scratch() / "run2";
    const CliOutcome r2 =
        run_cli("run \"" + cfg.string() + "\" --out \"" + out2.string() + "\"");
    CHECK(r2.code == 0);
    CHECK(slurp(out2 / "manifest.json") == slurp(out1 / "manifest.json"));
    CHECK(slurp(out2 / "report.json") == slurp(out1 / "report.json"));
    for (const auto& f : man.at("files")) {
      const std::string name = f.get<std::string>();
      CHECK(slurp(out2 / name) == slurp(out1 / name));
    }
  }

  SUBCASE("dotted overrides land in the resolved config") {
    const fs::path out3 = scratch() / "run3";
    const CliOutcome r3 = run_cli("run \"" + cfg.string() + "\" --out \"" +
                                  out3.string() + "\" --override solve.gridN=32");
    CHECK(r3.code == 0);
    const json m3 = json::parse(slurp(out3 / "manifest.json"));
    CHECK(m3.at("config").at("solve").at("gridN").get<int>() == 32);
  }
}

TEST_CASE("config errors exit with code 2") {
  const fs::path bad = scratch() / "bad.json";
  spit(bad, "{\"scenario\": \"constant-sanity\", \"gridM\": 1}\n");
  CHECK(run_cli("run \"" + bad.string() + "\"").code == 2);

  const fs::path noScenario = scratch() / "none.json";
  spit(noScenario, "{}\n");
  CHECK(run_cli("run \"" + noScenario.string() + "\"").code == 2);

  CHECK(run_cli("run \"" + (scratch() / "missing.json").string() + "\"").code == 2);

  const fs::path garbled = scratch() / "garbled.json";
  spit(garbled, "{scenario:\n");
  CHECK(run_cli("run \"" + garbled.string() + "\"").code == 2);

  CHECK(run_cli("verify no-such-scenario").code == 2);
}

TEST_CASE("verify runs checks without artifacts") {
  const CliOutcome r = run_cli("verify constant-sanity");
  CHECK(r.code == 0);
  CHECK(r.output.find("constant-sanity") != std::string::npos);
  CHECK(r.output.find("[PASS]") != std::string::npos);
  CHECK(r.output.rfind("PASS\n") != std::string::npos);
}
