// Copyright 2026 The crowdrel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end checks of the installed binary: exit codes, artifacts on disk,
// and the error contract on stderr. Everything runs through std::system.

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "crowdrel/reports.hpp"

namespace fs = std::filesystem;

namespace {

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Unique scratch directory, removed when the test block ends.
struct TempDir {
  fs::path path;

  TempDir() {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() /
           ("crowdrel_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter.fetch_add(1)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string Str() const { return path.string(); }
};

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CliResult RunCli(const std::string& args) {
  TempDir io;
  fs::path out_path = io.path / "out.txt";
  fs::path err_path = io.path / "err.txt";
  std::string command = std::string("\"") + CROWDREL_CLI_PATH + "\" " + args +
                        " > \"" + out_path.string() + "\" 2> \"" +
                        err_path.string() + "\"";
  int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = Slurp(out_path);
  result.err = Slurp(err_path);
  return result;
}

std::string GoldenArgs() {
  const std::string dir = std::string(CROWDREL_TEST_DATA_DIR) + "/table_golden";
  return "--schema \"" + dir + "/schema.cfg\" --sentences \"" + dir +
         "/sentences.csv\" --judgments \"" + dir + "/judgments.csv\"";
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("--help exits 0 and lists the subcommands") {
  CliResult result = RunCli("--help");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("validate") != std::string::npos);
  CHECK(result.out.find("report") != std::string::npos);
  CHECK(result.out.find("simulate") != std::string::npos);
}

TEST_CASE("Unknown subcommands are a usage error") {
  CliResult result = RunCli("frobnicate");
  CHECK(result.exit_code == 2);
}

TEST_CASE("validate accepts the clean fixture and writes reports") {
  TempDir out;
  CliResult result = RunCli("validate " + GoldenArgs() + " --out " + out.Str());
  CHECK(result.exit_code == 0);
  REQUIRE(fs::exists(out.path / "validation.csv"));
  REQUIRE(fs::exists(out.path / "validation.json"));
  auto doc = nlohmann::json::parse(Slurp(out.path / "validation.json"));
  CHECK(doc["accepted"] == true);
  CHECK(doc["error_count"] == 0);
}

TEST_CASE("validate exits 1 when the dataset is rejected") {
  TempDir data;
  const std::string dir = std::string(CROWDREL_TEST_DATA_DIR) + "/table_golden";
  WriteFile(data.path / "judgments.csv",
            "worker_id,sentence_id,selections,submission_index\n"
            "w01,zzz,cause,0\n");
  TempDir out;
  CliResult result = RunCli(
      "validate --schema \"" + dir + "/schema.cfg\" --sentences \"" + dir +
      "/sentences.csv\" --judgments \"" + (data.path / "judgments.csv").string() +
      "\" --out " + out.Str());
  CHECK(result.exit_code == 1);
  auto doc = nlohmann::json::parse(Slurp(out.path / "validation.json"));
  CHECK(doc["accepted"] == false);
}

TEST_CASE("score writes full-precision relation scores") {
  TempDir out;
  const std::string dir = std::string(CROWDREL_TEST_DATA_DIR) + "/table_golden";
  CliResult result = RunCli("score --schema \"" + dir +
                            "/schema.cfg\" --judgments \"" + dir +
                            "/judgments.csv\" --out " + out.Str());
  CHECK(result.exit_code == 0);
  REQUIRE(fs::exists(out.path / "scores.csv"));
  REQUIRE(fs::exists(out.path / "clarity.json"));
  REQUIRE(fs::exists(out.path / "score.json"));

  std::ifstream in(out.path / "scores.csv", std::ios::binary);
  crowdrel::ScoreMap cause = crowdrel::ParseScoresCsv(in, "cause");
  REQUIRE(cause.size() == 2);
  CHECK(cause.at("s1") == doctest::Approx(10.0 / std::sqrt(107.0))
                              .epsilon(1e-15));
  CHECK(cause.at("s2") == 0.0);
}

TEST_CASE("aggregate reproduces the fixture's annotation vectors") {
  TempDir out;
  const std::string dir = std::string(CROWDREL_TEST_DATA_DIR) + "/table_golden";
  CliResult result = RunCli("aggregate --schema \"" + dir +
                            "/schema.cfg\" --judgments \"" + dir +
                            "/judgments.csv\" --out " + out.Str());
  CHECK(result.exit_code == 0);
  std::string vectors = Slurp(out.path / "vectors.csv");
  CHECK(vectors.find("s1,0,0,1,10,1,2,0,0,1,0,0,0,0,0,15") !=
        std::string::npos);
  CHECK(vectors.find("s2,3,1,7,0,0,0,0,0,3,0,0,0,1,0,15") !=
        std::string::npos);
}

TEST_CASE("Config errors exit 2 with a machine-readable report") {
  TempDir out;
  CliResult result = RunCli("filter-workers " + GoldenArgs() +
                            " --tau 1.5 --out " + out.Str());
  CHECK(result.exit_code == 2);
  auto doc = nlohmann::json::parse(result.err);
  CHECK(doc["error"]["type"] == "config");
}

TEST_CASE("label without expert data is a data error") {
  TempDir out;
  CliResult result = RunCli("label " + GoldenArgs() +
                            " --provenance expert --relations cause --out " +
                            out.Str());
  CHECK(result.exit_code == 1);
  auto doc = nlohmann::json::parse(result.err);
  CHECK(doc["error"]["type"] == "data");
}

TEST_CASE("simulate emits a bundle that validates cleanly") {
  TempDir out;
  CliResult sim = RunCli(
      "simulate --n-sentences 10 --n-workers 6 --workers-per-sentence 5 "
      "--spam-fraction 0.2 --seed 3 --out " +
      out.Str());
  CHECK(sim.exit_code == 0);
  for (const char* name : {"schema.cfg", "sentences.csv", "judgments.csv",
                           "latent.json", "sim.json"}) {
    CHECK(fs::exists(out.path / name));
  }

  TempDir check;
  CliResult validate = RunCli(
      "validate --schema \"" + (out.path / "schema.cfg").string() +
      "\" --sentences \"" + (out.path / "sentences.csv").string() +
      "\" --judgments \"" + (out.path / "judgments.csv").string() +
      "\" --out " + check.Str());
  CHECK(validate.exit_code == 0);
}

TEST_CASE("simulate is byte-deterministic in the seed") {
  TempDir first;
  TempDir second;
  std::string args =
      "simulate --n-sentences 8 --n-workers 5 --workers-per-sentence 4 "
      "--clear-fraction 0.5 --seed 11 --out ";
  CHECK(RunCli(args + first.Str()).exit_code == 0);
  CHECK(RunCli(args + second.Str()).exit_code == 0);
  for (const char* name : {"sentences.csv", "judgments.csv", "latent.json"}) {
    CHECK(Slurp(first.path / name) == Slurp(second.path / name));
  }
}

TEST_CASE("mcnemar reports the corrected and uncorrected statistics") {
  TempDir data;
  std::ostringstream gold;
  gold << "sentence_id,label\n";
  std::ostringstream first;
  std::ostringstream second;
  first << "sentence_id,relation,score\n";
  second << "sentence_id,relation,score\n";
  for (int i = 1; i <= 40; ++i) {
    std::string id = "t" + std::to_string(i);
    gold << id << ",1\n";
    bool a_correct = i <= 30;
    bool b_correct = i <= 20 || i == 31 || i == 32;
    first << id << ",cause," << (a_correct ? "1" : "-1") << "\n";
    second << id << ",cause," << (b_correct ? "1" : "-1") << "\n";
  }
  WriteFile(data.path / "gold.csv", gold.str());
  WriteFile(data.path / "a.csv", first.str());
  WriteFile(data.path / "b.csv", second.str());

  std::string base = "mcnemar --gold \"" + (data.path / "gold.csv").string() +
                     "\" --relation cause --a \"" +
                     (data.path / "a.csv").string() + "\" --b \"" +
                     (data.path / "b.csv").string() + "\" --out ";

  TempDir corrected;
  CHECK(RunCli(base + corrected.Str()).exit_code == 0);
  auto doc = nlohmann::json::parse(Slurp(corrected.path / "mcnemar.json"));
  CHECK(doc["b"] == 10);
  CHECK(doc["c"] == 2);
  CHECK(doc["chi_square"].get<double>() ==
        doctest::Approx(49.0 / 12.0).epsilon(1e-12));
  CHECK(doc["continuity_correction"] == true);

  TempDir uncorrected;
  CHECK(RunCli(base + uncorrected.Str() + " --no-correction").exit_code == 0);
  auto raw = nlohmann::json::parse(Slurp(uncorrected.path / "mcnemar.json"));
  CHECK(raw["chi_square"].get<double>() ==
        doctest::Approx(64.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("build-gold queues unresolved disagreements and exits 1") {
  // Both sentences seed cause (expert labels must target the seed relation).
  // The crowd confirms s1 unanimously but rejects s2, so s2 disagrees with
  // the expert and lands in the adjudication queue.
  TempDir data;
  const std::string dir = std::string(CROWDREL_TEST_DATA_DIR) + "/table_golden";
  WriteFile(data.path / "sentences.csv",
            "id,text,term1,term1_start,term1_end,term2,term2_start,term2_end,"
            "seed_relation,source_tag\n"
            "s1,Low iron intake causes fatigue in adults.,Low iron intake,0,15,"
            "fatigue,23,30,cause,local\n"
            "s2,Iron supplements cause mild nausea in some patients.,"
            "Iron supplements,0,16,mild nausea,23,34,cause,local\n");
  std::string judgments = "worker_id,sentence_id,selections,submission_index\n";
  for (int w = 1; w <= 5; ++w) {
    judgments += "w" + std::to_string(w) + ",s1,cause," + std::to_string(w) +
                 "\n";
    judgments += "w" + std::to_string(w) + ",s2," +
                 (w == 1 ? "cause" : "side_effect") + "," +
                 std::to_string(w + 10) + "\n";
  }
  WriteFile(data.path / "judgments.csv", judgments);
  WriteFile(data.path / "expert.csv",
            "sentence_id,relation,decision\n"
            "s1,cause,1\n"
            "s2,cause,1\n");
  TempDir out;
  std::string base = "build-gold --schema \"" + dir +
                     "/schema.cfg\" --sentences \"" +
                     (data.path / "sentences.csv").string() +
                     "\" --judgments \"" +
                     (data.path / "judgments.csv").string() + "\" --expert \"" +
                     (data.path / "expert.csv").string() +
                     "\" --relation cause --threshold 0.5 --floor 3 --out ";
  CliResult queued = RunCli(base + out.Str());
  CHECK(queued.exit_code == 1);
  CHECK(fs::exists(out.path / "adjudication_queue.csv"));
  CHECK_FALSE(fs::exists(out.path / "gold_cause.csv"));
  std::string queue = Slurp(out.path / "adjudication_queue.csv");
  CHECK(queue.find("s2,cause") != std::string::npos);

  WriteFile(data.path / "adjudications.csv",
            "sentence_id,relation,resolution\n"
            "s2,cause,positive\n");
  TempDir resolved;
  CliResult done = RunCli(base + resolved.Str() + " --adjudications \"" +
                          (data.path / "adjudications.csv").string() + "\"");
  CHECK(done.exit_code == 0);
  CHECK(Slurp(resolved.path / "gold_cause.csv") ==
        "sentence_id,label\ns1,1\ns2,1\n");
}

TEST_CASE("Options can come from a config file") {
  TempDir data;
  WriteFile(data.path / "crowdrel.ini", "threads=2\n");
  TempDir out;
  CliResult result = RunCli("--config \"" +
                            (data.path / "crowdrel.ini").string() +
                            "\" validate " + GoldenArgs() + " --out " +
                            out.Str());
  CHECK(result.exit_code == 0);
}

TEST_CASE("report runs the full pipeline on the fixture") {
  TempDir out;
  CliResult result = RunCli("report " + GoldenArgs() +
                            " --relations cause --seed 5 --out " + out.Str());
  CHECK(result.exit_code == 0);
  for (const char* name :
       {"validation.json", "workers.csv", "vectors.csv", "scores.csv",
        "training_crowd_cause.csv", "stability_cosine.csv", "report.json"}) {
    CHECK(fs::exists(out.path / name));
  }
  auto doc = nlohmann::json::parse(Slurp(out.path / "report.json"));
  CHECK(doc.contains("parameters"));
  CHECK(doc.contains("artifacts"));
}
