// Copyright 2026 The opalg Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "opalg/serialize.hpp"

using namespace opalg;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / "opalg_cli_test";
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Space and map files for the upper triangular corner cut.
std::pair<std::string, std::string> write_inputs(const std::string& example) {
  const fs::path d = scratch_dir();
  const fs::path bundle = d / (example + ".json");
  REQUIRE(run({"build", example, "--out", bundle.string()}).code == 0);
  const Json j = Json::parse(slurp(bundle));
  const fs::path s = d / (example + "_space.json");
  const fs::path m = d / (example + "_map.json");
  std::ofstream(s) << j.at("space").dump();
  std::ofstream(m) << j.at("map").dump();
  return {s.string(), m.string()};
}

}  // namespace

TEST_CASE("list") {
  const Run r = run({"list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("five_by_five\t") != std::string::npos);
  CHECK(r.out.find("ptilde_m3m2\t") != std::string::npos);
  CHECK(r.out.find("EXPERIMENTAL") != std::string::npos);
  const Run j = run({"list", "--format", "json"});
  CHECK(Json::parse(j.out).size() == 15);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"verify", "no_such_example"}).code == 2);
  CHECK(run({"verify", "tri2_corner", "--all"}).code == 2);
  CHECK(run({"build", "no_such_example"}).code == 2);
  CHECK(run({"classify"}).code == 2);
  CHECK(run({"classify", "--space", "/nonexistent.json", "--map", "/nonexistent.json"}).code == 2);
  CHECK(run({"list", "--format", "yaml"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify prints tagged lines") {
  const Run r = run({"verify", "tri2_corner"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS range.is_subalgebra == true [published: range is a subalgebra]") != std::string::npos);
  CHECK(r.out.find("\nFAIL") == std::string::npos);
  CHECK(r.out.find(" 0 FAIL,") != std::string::npos);
  CHECK(r.out.find("summary: ") != std::string::npos);
  const Run j = run({"verify", "tri2_corner", "--format", "json"});
  const Json parsed = Json::parse(j.out);
  CHECK(parsed.at("summary").at("fail") == 0);
}

TEST_CASE("experimental claims are skipped") {
  const Run r = run({"verify", "five_by_five_mod23"});
  CHECK(r.code == 0);
  CHECK(r.out.find("SKIPPED mac.left_condition") != std::string::npos);
}

TEST_CASE("classify from files is deterministic") {
  const auto [s, m] = write_inputs("tri2_corner");
  const std::vector<std::string> args = {"classify", "--space", s, "--map", m, "--level", "2", "--seed", "7", "--restarts", "4"};
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("report.range_flags.is_subalgebra true") != std::string::npos);

  std::vector<std::string> json_args = args;
  json_args.push_back("--format");
  json_args.push_back("json");
  const Json j = Json::parse(run(json_args).out);
  CHECK(j.at("tolerances").at("seed") == 7);
  CHECK(j.at("report").at("P").at("levels").size() == 2);
}

TEST_CASE("classify reports skipped checks") {
  const auto [s, m] = write_inputs("tri2_bicontractive_counterexample");
  const Run r = run({"classify", "--space", s, "--map", m, "--level", "1", "--restarts", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  REQUIRE(j.at("report").at("skipped").size() == 2);
  CHECK(j.at("report").at("skipped")[0].at("status") == "SKIPPED");
  CHECK(j.at("report").at("skipped")[0].at("witness").is_object());
}

TEST_CASE("classify rejects a non-projection") {
  const fs::path d = scratch_dir();
  Json space = {{"name", "D2"}, {"ambient_dim", 2}, {"basis", {to_json(CMat::unit(2, 0, 0)), to_json(CMat::unit(2, 1, 1))}}};
  Json map = {{"name", "twice"}, {"codomain_dim", 2}, {"images", {to_json(2.0 * CMat::unit(2, 0, 0)), to_json(CMat::unit(2, 1, 1))}}};
  std::ofstream(d / "twice_space.json") << space.dump();
  std::ofstream(d / "twice_map.json") << map.dump();
  const Run r = run({"classify", "--space", (d / "twice_space.json").string(), "--map", (d / "twice_map.json").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("idempot") != std::string::npos);
  std::ofstream(d / "broken.json") << "{ not json";
  CHECK(run({"classify", "--space", (d / "broken.json").string(), "--map", (d / "twice_map.json").string()}).code == 2);
}

TEST_CASE("seed from the environment") {
  const auto [s, m] = write_inputs("parity_d2");
  ::setenv("OPALG_SEED", "11", 1);
  const Json j = Json::parse(run({"classify", "--space", s, "--map", m, "--level", "1", "--restarts", "1", "--format", "json"}).out);
  const Json k = Json::parse(run({"classify", "--space", s, "--map", m, "--level", "1", "--restarts", "1", "--seed", "3", "--format", "json"}).out);
  ::unsetenv("OPALG_SEED");
  CHECK(j.at("tolerances").at("seed") == 11);
  CHECK(k.at("tolerances").at("seed") == 3);
  CHECK(run({"list"}).code == 0);
}

TEST_CASE("build writes a loadable bundle") {
  const fs::path out = scratch_dir() / "p5.json";
  REQUIRE(run({"build", "five_by_five", "--out", out.string()}).code == 0);
  const Json j = Json::parse(slurp(out));
  const OpMap p = map_from_json(j.at("map"));
  CHECK(p.domain().dim() == 3);
  bool tagged = false;
  for (const auto& e : j.at("expected"))
    if (e.at("field") == "range.is_subalgebra" && e.at("provenance") == "published") tagged = true;
  CHECK(tagged);
  CHECK(j.at("certificates")[0].at("target") == "P");
}
