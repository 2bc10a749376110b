#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

CliResult run_cli(const std::string& args) {
  const std::string command = std::string(TRIBELANG_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[512];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tribelang-cli-" + std::to_string(getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("lang check accepts the clean bundled language") {
  CliResult r = run_cli("lang check zingaloom");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "zingaloom: 25 conversations"));
  CHECK(contains(r.output, "constraints satisfied"));
}

TEST_CASE("lang check reports the bundled dataset's violations") {
  CliResult r = run_cli("lang check tinkatongue");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.output, "tinkatongue: 25 conversations"));
  CHECK(contains(r.output,
                 "violation (adjacency) at conversation 3, sentences 3-4"));
  CHECK(contains(r.output,
                 "violation (adjacency) at conversation 7, sentences 1-2"));
  CHECK(contains(r.output,
                 "violation (adjacency) at conversation 7, sentences 3-4"));
  CHECK(contains(r.output, "violation (sentence_uniqueness)"));
  CHECK(contains(r.output, "violation (unique_opening)"));
  CHECK(contains(r.output, "5 constraint violations"));
}

TEST_CASE("lang check fails on an unreadable path") {
  CliResult r = run_cli("lang check /nonexistent/lang.json");
  CHECK(r.exit_code == 1);
}

TEST_CASE("lang diff prints the shared lexicon") {
  CliResult r = run_cli("lang diff tinkatongue zingaloom");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "overlap: 4 words: kima laku lira tika"));
}

TEST_CASE("lang gen produces a clean disjoint language, reproducibly") {
  TempDir tmp;
  const fs::path first = tmp.path / "gen42.json";
  const fs::path second = tmp.path / "gen42-again.json";

  CliResult gen = run_cli("lang gen --seed 42 --disjoint-from tinkatongue --out " +
                          first.string());
  CHECK(gen.exit_code == 0);
  CHECK(contains(gen.output, "wrote " + first.string()));

  CliResult check = run_cli("lang check " + first.string());
  CHECK(check.exit_code == 0);
  CHECK(contains(check.output, "constraints satisfied"));

  CliResult diff = run_cli("lang diff " + first.string() + " tinkatongue");
  CHECK(contains(diff.output, "overlap: 0 words"));

  run_cli("lang gen --seed 42 --disjoint-from tinkatongue --out " + second.string());
  CHECK(slurp(first) == slurp(second));
}

TEST_CASE("run drives oracle trials and report rescoring matches") {
  TempDir tmp;
  const std::string out_dir = (tmp.path / "trials").string();

  CliResult run = run_cli("run --agent oracle --trials 2 --seed 0 --out " + out_dir);
  CHECK(run.exit_code == 0);
  CHECK(contains(run.output, "oracle: 2 sessions"));
  CHECK(contains(run.output, "    1  1.0000  1.0000  0.0000      1      3      6"));
  CHECK(contains(run.output, "    2  1.0000  1.0000  0.0000      1      3      6"));
  CHECK(fs::exists(fs::path(out_dir) / "oracle-trial-1.jsonl"));
  CHECK(fs::exists(fs::path(out_dir) / "oracle-trial-2.jsonl"));

  CliResult report = run_cli("report " + out_dir + "/oracle-trial-1.jsonl " + out_dir +
                             "/oracle-trial-2.jsonl");
  CHECK(report.exit_code == 0);
  CHECK(contains(report.output, "oracle: 2 sessions"));
  CHECK(contains(report.output, " mean  1.0000  1.0000  0.0000"));
}

TEST_CASE("run emits csv when asked") {
  CliResult r = run_cli("run --agent imitator --trials 1 --seed 3 --t-max 10 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output,
                 "label,trial,tvr,ac,fr,ttfk,completions,total_turns,valid_turns"));
  CHECK(contains(r.output, "imitator,1,1,1,0,1,0,10,10"));
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run_cli("bogus").exit_code == 2);
  CHECK(run_cli("run").exit_code == 2);
  CHECK(run_cli("run --agent oracle --format yaml").exit_code == 2);
  CHECK(run_cli("lang").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("validation errors exit with status 1") {
  CHECK(run_cli("run --agent nosuch").exit_code == 1);
  CHECK(run_cli("run --agent oracle --language /nonexistent.json").exit_code == 1);
  CliResult report = run_cli("report /nonexistent-transcript.jsonl");
  CHECK(report.exit_code == 1);
  CHECK(contains(report.output, "no readable transcripts"));
}
