#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "ptv/cli.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = ptv::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(const std::vector<std::string>& args, int expected = 0) {
  auto r = run(args);
  REQUIRE_MESSAGE(r.code == expected, r.err);
  return json::parse(r.out);
}

// Scratch files live under a per-run temp directory, never in the cwd.
std::string tmp(const std::string& name) {
  static const std::string dir = [] {
    std::random_device rd;
    auto d = std::filesystem::temp_directory_path() /
             ("ptv_cli_test_" + std::to_string(rd()));
    std::filesystem::create_directories(d);
    return d.string();
  }();
  return dir + "/" + name;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << content;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("catalog listing") {
  auto r = run({"catalog", "list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("e6\n") != std::string::npos);
  CHECK(r.out.find("a9\n") != std::string::npos);

  const json j = run_json({"catalog", "list", "--format", "json"});
  CHECK(j["version"] == "ptv 1.0.0");
  CHECK(j["entries"].size() == 7);
}

TEST_CASE("catalog summary carries the frozen instance data") {
  const json j = run_json({"catalog", "show", "e6", "--format", "json"});
  CHECK(j["group-order"] == 51840);
  CHECK(j["orbit-size"] == 27);
  CHECK(j["stabilizer-order"] == 1920);
  CHECK(j["ww"] == "-4/3");
  CHECK(j["exponent"] == "6");
  CHECK(j["degree"] == "10");
  REQUIRE(j["classes"].size() == 2);
  CHECK(j["classes"][0]["name"] == "C1");
  CHECK(j["classes"][0]["double-cosets"] == 21);
  CHECK(j["classes"][0]["fix-dim"] == 5);
  CHECK(j["classes"][1]["name"] == "C2");
  CHECK(j["classes"][1]["double-cosets"] == 15);
  CHECK(j["classes"][1]["fix-dim"] == 4);

  auto bad = run({"catalog", "show", "zzz"});
  CHECK(bad.code == 2);
}

TEST_CASE("analysis report fields") {
  const json j = run_json(
      {"analyze", "--catalog", "e6", "--branch", "C1:24", "--format", "json"});
  const auto& inv = j["invariants"];
  CHECK(inv["d"] == 27);
  CHECK(inv["e"] == "6");
  CHECK(inv["deg"] == "10");
  CHECK(inv["ww"] == "-4/3");
  CHECK(inv["genus"] == "46");
  CHECK(inv["dimP"] == "6");
  CHECK(inv["F"] == "0");
  CHECK(inv["verdict"] == true);
  CHECK(inv["group-order"] == 51840);
  CHECK(inv["stabilizer-order"] == 1920);
  CHECK(inv["family-dim"] == 21);
  CHECK(j["input-echo"]["source"] == "catalog:e6");
  CHECK(j["input-echo"]["branch"] == "C1:24");
  REQUIRE(j["per-class"].size() == 1);
  CHECK(j["per-class"][0]["name"] == "C1");
  CHECK(j["per-class"][0]["multiplicity"] == 24);
  CHECK(j["per-class"][0]["f-contribution"] == "0");
  CHECK_FALSE(j.contains("matrices"));

  const json ja = run_json(
      {"analyze", "--catalog", "a4", "--branch", "C3:4", "--format", "json"});
  CHECK(ja["invariants"]["e"] == "2");
  CHECK(ja["invariants"]["genus"] == "3");
  CHECK(ja["invariants"]["dimP"] == "1");
  CHECK(ja["invariants"]["verdict"] == true);
}

TEST_CASE("emitted matrices") {
  const json j = run_json({"analyze", "--catalog", "a4", "--branch", "C3:4",
                           "--format", "json", "--emit-matrices"});
  REQUIRE(j.contains("matrices"));
  const auto& k = j["matrices"]["kanev"];
  const auto& s = j["matrices"]["schur"];
  REQUIRE(k.size() == 6);
  REQUIRE(s.size() == 6);
  // |H|^2 (w,w) on the diagonal of the Schur matrix: 4 * (-1).
  CHECK(s[0][0] == "-4");
  CHECK(k[0][0] == "0");
}

TEST_CASE("exit codes distinguish parse, validation, identity") {
  CHECK(run({"analyze", "--catalog", "e6", "--branch", "C1:11"}).code == 3);
  CHECK(run({"analyze", "--catalog", "e6", "--branch", "C1:11"})
            .err.find("NonIntegerDimension") != std::string::npos);
  CHECK(run({"analyze", "--catalog", "a4", "--branch", "C3"}).code == 2);
  CHECK(run({"analyze", "--catalog", "a4", "--branch", "C3:x"}).code == 2);
  CHECK(run({"analyze", "--catalog", "a4", "--branch", "C3:-1"}).code == 2);
  CHECK(run({"analyze", "--catalog", "a4", "--branch", "Q9:1"}).code == 2);
  CHECK(run({"analyze", "--catalog", "a4", "--branch", "C3:0"}).code == 3);
  CHECK(run({"analyze", "--catalog", "zzz", "--branch", "C3:4"}).code == 2);
  CHECK(run({"analyze", "--branch", "C3:4"}).code == 2);
  CHECK(run({"analyze"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("kanev dumps") {
  const json j =
      run_json({"kanev", "--catalog", "a4", "--format", "json"});
  CHECK(j["d"] == 6);
  CHECK(j["degree"] == "1");
  CHECK(j["binary"] == true);
  REQUIRE(j["entries"].size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(j["entries"][i].size() == 6);
    CHECK(j["entries"][i][i] == "0");
    for (int c = 0; c < 6; ++c) {
      CHECK((j["entries"][i][c] == "0" || j["entries"][i][c] == "1"));
      CHECK(j["entries"][i][c] == j["entries"][c][i]);
    }
  }

  auto t = run({"kanev", "--catalog", "a4", "--format", "text"});
  CHECK(t.code == 0);
  CHECK(t.out.find("kanev matrix 6 x 6, degree 1\n") != std::string::npos);
  std::istringstream lines(t.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.size() == 6);
    CHECK(line.find_first_not_of("01") == std::string::npos);
    ++rows;
  }
  CHECK(rows == 6);
}

TEST_CASE("existence search through the front end") {
  const json j = run_json({"existence", "--catalog", "a4", "--branch", "C3:4",
                           "--seed", "1", "--format", "json"});
  CHECK(j["found"] == true);
  REQUIRE(j["tuple"].size() == 4);
  for (const auto& e : j["tuple"]) {
    CHECK(e["name"] == "C3");
    CHECK(e["order"] == 3);
    CHECK(e["matrix"].size() == 3);
  }

  // Same seed, same bytes.
  auto r1 = run({"existence", "--catalog", "a4", "--branch", "C3:4", "--seed",
                 "9", "--format", "json"});
  auto r2 = run({"existence", "--catalog", "a4", "--branch", "C3:4", "--seed",
                 "9", "--format", "json"});
  CHECK(r1.out == r2.out);

  CHECK(run({"existence", "--catalog", "a4", "--branch", "C3:1"}).code == 1);
  auto nf = run({"existence", "--catalog", "e6", "--branch", "C2:2", "--budget",
                 "500", "--format", "json"});
  CHECK(nf.code == 1);
  CHECK(json::parse(nf.out)["found"] == false);
}

TEST_CASE("user-supplied group and weight files") {
  write_file(tmp("cli_sign.json"), R"({ "rank": 1, "generators": [[["-1"]]] })");
  write_file(tmp("cli_whalf.json"), R"(["1/2"])");

  const json j = run_json({"analyze", "--group", tmp("cli_sign.json"), "--weight",
                           tmp("cli_whalf.json"), "--branch", "K1:4", "--format",
                           "json"});
  const auto& inv = j["invariants"];
  CHECK(inv["d"] == 2);
  CHECK(inv["e"] == "1");
  CHECK(inv["deg"] == "0");
  CHECK(inv["ww"] == "-1/2");
  CHECK(inv["genus"] == "1");
  CHECK(inv["dimP"] == "1");
  CHECK(inv["verdict"] == true);
  CHECK(j["per-class"][0]["name"] == "K1");

  // Class listing works without a weight; double cosets need one.
  const json jc =
      run_json({"classes", "--group", tmp("cli_sign.json"), "--format", "json"});
  REQUIRE(jc["classes"].size() == 1);
  CHECK(jc["classes"][0]["name"] == "K1");
  CHECK(jc["classes"][0]["fix-dim"] == 0);
  CHECK_FALSE(jc["classes"][0].contains("double-cosets"));
  const json jcw = run_json({"classes", "--group", tmp("cli_sign.json"), "--weight",
                             tmp("cli_whalf.json"), "--format", "json"});
  CHECK(jcw["classes"][0]["double-cosets"] == 1);
}

TEST_CASE("file errors map to the right exit codes") {
  CHECK(run({"analyze", "--group", "no_such_file.json", "--weight",
             tmp("cli_whalf.json"), "--branch", "K1:4"})
            .code == 2);
  write_file(tmp("cli_bad.json"), "{ not json");
  CHECK(run({"analyze", "--group", tmp("cli_bad.json"), "--weight", tmp("cli_whalf.json"),
             "--branch", "K1:4"})
            .code == 2);
  write_file(tmp("cli_schema.json"), R"({ "rank": 0, "generators": [] })");
  CHECK(run({"analyze", "--group", tmp("cli_schema.json"), "--weight",
             tmp("cli_whalf.json"), "--branch", "K1:4"})
            .code == 2);
  write_file(tmp("cli_sign.json"), R"({ "rank": 1, "generators": [[["-1"]]] })");
  CHECK(run({"analyze", "--group", tmp("cli_sign.json"), "--branch", "K1:4"}).code ==
        2);
  write_file(tmp("cli_wbad.json"), R"(["1/2", "1/3"])");
  CHECK(run({"analyze", "--group", tmp("cli_sign.json"), "--weight", tmp("cli_wbad.json"),
             "--branch", "K1:4"})
            .code == 3);

  // Finite but non-integral generators: the lattice action is rejected.
  write_file(tmp("cli_rat.json"),
             R"({ "rank": 2, "generators": [[["0", "-1/2"], ["2", "0"]]] })");
  write_file(tmp("cli_w2.json"), R"(["1/2", "1/2"])");
  auto r = run({"analyze", "--group", tmp("cli_rat.json"), "--weight", tmp("cli_w2.json"),
                "--branch", "K1:2"});
  CHECK(r.code == 3);
  CHECK(r.err.find("LatticeNotPreserved") != std::string::npos);

  // Infinite closure trips the cap.
  write_file(tmp("cli_inf.json"),
             R"({ "rank": 1, "generators": [[["2"]]], "cap": 64 })");
  auto rc = run({"classes", "--group", tmp("cli_inf.json")});
  CHECK(rc.code == 3);
  CHECK(rc.err.find("CapExceeded") != std::string::npos);
}

TEST_CASE("atomic output file and byte-stable reports") {
  const std::vector<std::string> base = {"analyze", "--catalog", "a5",
                                         "--branch", "C3:6", "--format", "json"};
  auto direct = run(base);
  REQUIRE(direct.code == 0);

  auto with_out = base;
  with_out.push_back("--out");
  with_out.push_back(tmp("cli_report.json"));
  auto r = run(with_out);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(read_file(tmp("cli_report.json")) == direct.out);

  // Rebuilding the command from the echo reproduces the bytes.
  const json j = json::parse(direct.out);
  const std::string source = j["input-echo"]["source"];
  REQUIRE(source.rfind("catalog:", 0) == 0);
  auto again = run({"analyze", "--catalog", source.substr(8), "--branch",
                    j["input-echo"]["branch"], "--format", "json"});
  CHECK(again.out == direct.out);
}
