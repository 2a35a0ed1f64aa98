// End-to-end checks of the command-line tool: exit codes, emitted files and
// reproducibility. The binary path comes in through ONESHOT_CLI_PATH.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "oneshot/serialization.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(ONESHOT_CLI_PATH) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("oneshot_cli_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Strips the manifest comment, whose wall-clock field is the one legitimate
// byte difference between reruns.
std::string without_manifest(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# manifest: ", 0) == 0) continue;
    out += line;
    out += '\n';
  }
  return out;
}

const char* kTinyExperiment = R"({
  "protocol": {"num_types": 2, "num_items": 6, "strong_per_type": 1},
  "max_set_size": 2,
  "net_resolution": 4,
  "vi_sweep": [1, 2],
  "repetitions": 2,
  "sessions": 40,
  "seed": 5
})";

}  // namespace

TEST_CASE("net-info prints the grid geometry") {
  const RunResult result = run_cli("net-info --types 4 --resolution 10");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("\"points\": 286") != std::string::npos);
  CHECK(result.output.find("\"epsilon\": 0.2") != std::string::npos);
}

TEST_CASE("counterexample reports the documented discrepancies and exits with the check code") {
  const RunResult result = run_cli("counterexample");
  CHECK(result.exit_code == 4);
  CHECK(result.output.find("[PASS] Q({3},1) after 3rd greedy sweep: measured 11.75") !=
        std::string::npos);
  CHECK(result.output.find("[PASS] Q({3},1) at the optimal values: measured 14") !=
        std::string::npos);
  // Two optimal-value quantities measure 12.5 and 3.5 against quoted 12 and 3.
  CHECK(result.output.find("[FAIL] Q({3,1},1) at the optimal values: measured 12.5") !=
        std::string::npos);
  CHECK(result.output.find("[FAIL] Q({2},1)-Q(0,1) at the optimal values: measured 3.5") !=
        std::string::npos);
  CHECK(result.output.find("optimal values: 14 17 22") != std::string::npos);
}

TEST_CASE("solve writes a parseable artifact for the toy problem") {
  const fs::path dir = fresh_dir("solve");
  write_text(dir / "config.json",
             R"({"toy": true, "operator": "greedy", "gamma": 0.5, "iterations": 3})");
  const RunResult result = run_cli("solve --config " + (dir / "config.json").string() +
                                   " --out " + dir.string() + " --format json");
  CHECK(result.exit_code == 0);
  REQUIRE(fs::exists(dir / "solve.json"));

  oneshot::RunManifest manifest;
  const oneshot::SolveArtifact artifact =
      oneshot::solve_from_json(read_text(dir / "solve.json"), &manifest);
  CHECK(manifest.subcommand == "solve");
  CHECK(artifact.operator_name == "greedy");
  CHECK(artifact.iterations == 3);
  REQUIRE(artifact.values.size() == 3);
  CHECK(artifact.values[0] == 11.75);
  CHECK(artifact.values[1] == 15.25);
  CHECK(artifact.values[2] == 20.25);

  // The CSV flavor of the same solve.
  const RunResult csv_run = run_cli("solve --config " + (dir / "config.json").string() +
                                    " --out " + dir.string() + " --format csv");
  CHECK(csv_run.exit_code == 0);
  const std::string csv = read_text(dir / "solve.csv");
  CHECK(csv.find("state,value,action\n") != std::string::npos);
  CHECK(csv.find("0,11.75,") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("simulate is byte-reproducible apart from the wall clock") {
  const fs::path dir = fresh_dir("simulate");
  write_text(dir / "config.json", kTinyExperiment);
  const std::string base =
      "simulate --config " + (dir / "config.json").string() + " --out ";
  const RunResult first = run_cli(base + (dir / "a").string());
  const RunResult second = run_cli(base + (dir / "b").string());
  CHECK(first.exit_code == 0);
  CHECK(second.exit_code == 0);
  const std::string a = read_text(dir / "a" / "experiment.csv");
  const std::string b = read_text(dir / "b" / "experiment.csv");
  CHECK(without_manifest(a) == without_manifest(b));
  CHECK(without_manifest(a).find("arm,vi_iterations,") == 0);

  // A different seed changes the numbers.
  const RunResult third = run_cli(base + (dir / "c").string() + " --seed 77");
  CHECK(third.exit_code == 0);
  const std::string c = read_text(dir / "c" / "experiment.csv");
  CHECK(without_manifest(a) != without_manifest(c));
  fs::remove_all(dir);
}

TEST_CASE("the check command accepts a suite selector") {
  const fs::path dir = fresh_dir("check");
  write_text(dir / "config.json", R"({"suite": "iia", "seeds": 2})");
  const RunResult result = run_cli("check --config " + (dir / "config.json").string() +
                                   " --out " + dir.string());
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("failures=0") != std::string::npos);
  CHECK(fs::exists(dir / "check.json"));
  fs::remove_all(dir);
}

TEST_CASE("validation failures exit with code 2") {
  const fs::path dir = fresh_dir("invalid");
  write_text(dir / "config.json", R"({"sessions": 0})");
  const RunResult result = run_cli("simulate --config " + (dir / "config.json").string() +
                                   " --out " + dir.string());
  CHECK(result.exit_code == 2);

  write_text(dir / "typo.json", R"({"sesions": 10})");
  const RunResult typo = run_cli("simulate --config " + (dir / "typo.json").string() +
                                 " --out " + dir.string());
  CHECK(typo.exit_code == 2);
  CHECK(typo.output.find("sesions") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("guard failures exit with code 3") {
  const fs::path dir = fresh_dir("guard");
  // Six types at resolution 60 would need millions of grid points.
  write_text(dir / "config.json",
             R"({"protocol": {"num_types": 6, "num_items": 14}, "net_resolution": 60})");
  const RunResult result = run_cli("simulate --config " + (dir / "config.json").string() +
                                   " --out " + dir.string());
  CHECK(result.exit_code == 3);
  fs::remove_all(dir);
}

TEST_CASE("missing config and unknown subcommand are reported") {
  const RunResult missing = run_cli("solve --config /nonexistent/nope.json");
  CHECK(missing.exit_code != 0);
  const RunResult unknown = run_cli("frobnicate");
  CHECK(unknown.exit_code != 0);
}
