#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "oscone/box_io.hpp"
#include "oscone/boxes.hpp"

using nlohmann::json;

namespace {

std::string binary() {
  const char* env = std::getenv("OSCONE_BIN");
  REQUIRE_MESSAGE(env != nullptr, "OSCONE_BIN must point at the oscone binary");
  return env;
}

std::string work_dir() {
  const char* env = std::getenv("OSCONE_WORK");
  return env ? env : "/tmp";
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = binary() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string write_file(const std::string& name, const std::string& content) {
  const std::string path = work_dir() + "/" + name;
  std::ofstream f(path);
  f << content;
  return path;
}

std::string pr_path() {
  return write_file("cli_pr.json",
                    oscone::box_io::box_to_json(oscone::boxes::Box::pr()).dump());
}

std::string uniform_path() {
  return write_file(
      "cli_uniform.json",
      oscone::box_io::box_to_json(oscone::boxes::Box::uniform()).dump());
}

}  // namespace

TEST_CASE("classify: PR box report and exit code") {
  const auto res = run("classify " + pr_path());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("P:yes") != std::string::npos);
  CHECK(res.output.find("L:no") != std::string::npos);
  CHECK(res.output.find("sqrt-Bell violated") != std::string::npos);
}

TEST_CASE("classify: uniform box is P, L and Q with a scalar witness") {
  const auto res = run("classify " + uniform_path());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("P:yes L:yes Q:yes(witness p=1)") != std::string::npos);
}

TEST_CASE("classify: malformed JSON exits 3, invalid box exits 2") {
  const std::string bad = write_file("cli_bad.json", "{not json");
  CHECK(run("classify " + bad).exit_code == 3);

  const std::string missing = work_dir() + "/does_not_exist.json";
  CHECK(run("classify " + missing).exit_code == 3);

  json j = oscone::box_io::box_to_json(oscone::boxes::Box::pr());
  j["p"][0][0][0][0] = 0.75;  // breaks normalization
  const std::string invalid = write_file("cli_invalid.json", j.dump());
  const auto res = run("classify " + invalid);
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("normalization") != std::string::npos);
}

TEST_CASE("classify: JSON output round-trips through the reader") {
  const auto res = run("classify " + uniform_path() + " --json");
  CHECK(res.exit_code == 0);
  const json j = json::parse(res.output);
  CHECK(j["P"] == true);
  CHECK(j["L"] == true);
  CHECK(j["witness_dim"] == 1);
}

TEST_CASE("bell: sqrt inequality on the PR box") {
  const auto res = run("bell " + pr_path() + " --inequality sqrt --d 0");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("VIOLATED") != std::string::npos);
  CHECK(res.output.find("S-table") != std::string::npos);
}

TEST_CASE("bell: chsh value of PR is 4, deterministic box gives +-2") {
  const auto res = run("bell " + pr_path() + " --inequality chsh");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("chsh = 4") != std::string::npos);

  const std::string det = write_file(
      "cli_det.json",
      oscone::box_io::box_to_json(oscone::boxes::Box::deterministic(0, 0, 0, 0))
          .dump());
  const auto res2 = run("bell " + det + " --inequality chsh");
  CHECK(res2.exit_code == 0);
  CHECK(res2.output.find("chsh = 2") != std::string::npos);
}

TEST_CASE("repro: fast cases pass") {
  for (const std::string c : {"gamma", "qmatrix", "prbox"}) {
    const auto res = run("repro " + c);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("FAIL") == std::string::npos);
  }
}

TEST_CASE("solve: ando with T = E12 is feasible and the report round-trips") {
  const std::string in = write_file("cli_ando.json", R"({"T": [[0, 1], [0, 0]]})");
  const auto res = run("solve --kind ando --input " + in + " --tol 1e-5");
  CHECK(res.exit_code == 0);
  const json j = json::parse(res.output);
  CHECK(j["status"] == "feasible");
  CHECK(j.contains("point"));
  // The witness block parses back as a complex matrix.
  const auto m = oscone::box_io::read_complex_matrix(j["point"]["M"]);
  CHECK(m.rows() == 4);
}

TEST_CASE("solve: split with t0 = t1 = I reports infeasible-evidence") {
  const std::string in = write_file(
      "cli_split.json", R"({"t0": [[1, 0], [0, 1]], "t1": [[1, 0], [0, 1]]})");
  const auto res = run("solve --kind split --input " + in);
  CHECK(res.exit_code == 0);
  CHECK(json::parse(res.output)["status"] == "infeasible-evidence");
}

TEST_CASE("solve: nc2 scalar (3,1,1) is feasible") {
  const std::string in = write_file(
      "cli_nc2.json", R"({"c0": [[3]], "c1": [[1]], "c2": [[1]]})");
  const auto res = run("solve --kind nc2 --input " + in);
  CHECK(res.exit_code == 0);
  CHECK(json::parse(res.output)["status"] == "feasible");
}

TEST_CASE("solve: shape mismatch exits 2") {
  const std::string in = write_file(
      "cli_shape.json", R"({"c0": [[3]], "c1": [[1, 0], [0, 1]], "c2": [[1]]})");
  CHECK(run("solve --kind nc2 --input " + in).exit_code == 2);
}

TEST_CASE("determinism: fixed seed gives identical classify output") {
  const auto a = run("classify " + pr_path() + " --seed 5 --json");
  const auto b = run("classify " + pr_path() + " --seed 5 --json");
  CHECK(a.output == b.output);
}

TEST_CASE("bell: sqrt verdict at d = 2") {
  const auto res = run("bell " + pr_path() + " --inequality sqrt --d 2");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("verdict(d=2): VIOLATED") != std::string::npos);
}

TEST_CASE("solve: --strict turns undecided into exit 4") {
  // Boundary instance with a strictness margin and too small a budget for
  // the gap evidence to stabilize.
  const std::string in = write_file(
      "cli_boundary.json", R"({"c0": [[2]], "c1": [[1]], "c2": [[1]]})");
  const std::string args = "solve --kind nc2 --input " + in +
                           " --delta 1e-6 --max-iter 100";
  CHECK(run(args).exit_code == 0);
  const auto strict = run(args + " --strict");
  CHECK(strict.exit_code == 4);
  CHECK(json::parse(strict.output)["status"] == "undecided");
}
