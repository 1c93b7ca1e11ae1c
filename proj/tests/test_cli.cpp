#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lnlat/cli.hpp"
#include "lnlat/errors.hpp"
#include "lnlat/json_io.hpp"

using namespace lnlat;
using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
  json error() const { return json::parse(err); }
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
  return std::string(LNLAT_DATA_DIR "/") + name;
}

std::string temp_spec(const std::string& name, const std::string& text) {
  std::string path = std::string("/tmp/lnlat_cli_") + name;
  std::ofstream f(path);
  f << text;
  return path;
}

}  // namespace

TEST_CASE("spec parsing") {
  LoadedSpec w3 = load_group_spec(data("w3.json"));
  REQUIRE(w3.tree.has_value());
  CHECK(w3.fg.ambient().order() == 128);
  CHECK(w3.fg.depth() == 2);

  LoadedSpec s33 = load_group_spec(data("s3s3.json"));
  CHECK(!s33.tree.has_value());
  CHECK(s33.fg.ambient().order() == 36);
  CHECK(s33.fg.level(1).order() == 6);
  CHECK(s33.fg.level(2).order() == 3);

  LoadedSpec deep = load_group_spec(data("w4.json"), 2u);
  CHECK(deep.fg.ambient().order() == 8);

  CHECK_THROWS_WITH_AS(parse_group_spec("{ \"kind\": "), doctest::Contains("byte"),
                       input_error);
  CHECK_THROWS_AS(parse_group_spec("{\"kind\": \"ring\"}"), input_error);
  CHECK_THROWS_AS(parse_group_spec("{\"kind\": \"permutation\", \"degree\": 3}"),
                  input_error);
  CHECK_THROWS_AS(
      parse_group_spec("{\"kind\": \"permutation\", \"degree\": 3, "
                       "\"generators\": {\"a\": [0, 0, 1]}, \"filtration\": []}"),
      input_error);
  CHECK_THROWS_AS(
      parse_group_spec("{\"kind\": \"permutation\", \"degree\": 3, "
                       "\"generators\": {\"a\": [1, 0, 2]}, \"filtration\": [[\"b\"]]}"),
      input_error);
}

TEST_CASE("structure lattice command") {
  RunResult r = run({"ln", "--input", data("w3.json"), "--max-witness", "1"});
  REQUIRE(r.code == 0);
  json rep = r.report();
  CHECK(rep["command"] == "ln");
  CHECK(rep["class_count"] == 13);
  CHECK(rep["lattice"]["size"] == 13);
  CHECK(rep["lattice"]["top"] != nullptr);

  // Byte-identical on repeat runs.
  RunResult again = run({"ln", "--input", data("w3.json"), "--max-witness", "1"});
  CHECK(again.out == r.out);

  RunResult dot = run({"ln", "--input", data("w3.json"), "--max-witness", "1",
                       "--format", "dot"});
  REQUIRE(dot.code == 0);
  CHECK(dot.out.find("digraph") != std::string::npos);
  CHECK(dot.out.find("->") != std::string::npos);
}

TEST_CASE("fixed points and decomposition commands") {
  RunResult fp = run({"fixed-points", "--input", data("w3.json")});
  REQUIRE(fp.code == 0);
  CHECK(fp.report()["fixed_count"] == 5);

  RunResult ld = run({"ld", "--input", data("w3.json")});
  REQUIRE(ld.code == 0);
  json rep = ld.report();
  CHECK(rep["algebra"]["lattice"]["size"] == rep["class_count"]);
  CHECK(rep["class_count"].get<std::size_t>() >= 4);
}

TEST_CASE("centraliser algebra and dual space commands") {
  RunResult lc = run({"lc", "--input", data("w3.json")});
  REQUIRE(lc.code == 0);
  json rep = lc.report();
  CHECK(rep["validated"] == true);
  CHECK(rep["class_count"] == 4);
  CHECK(rep["margin"]["i"] == 1);
  CHECK(rep["margin"]["j"] == 0);

  RunResult st = run({"stone", "--input", data("w3.json")});
  REQUIRE(st.code == 0);
  CHECK(st.report()["round_trip_ok"] == true);
  CHECK(st.report()["points"] == 2);
}

TEST_CASE("branch command") {
  RunResult w4 = run({"branch", "--input", data("w4.json"), "--depth", "2"});
  REQUIRE(w4.code == 0);
  json rep = w4.report();
  CHECK(rep["smooth"] == true);
  CHECK(rep["weakly_branch"] == true);
  CHECK(rep["locally_branch"] == true);

  RunResult odo = run({"branch", "--input", data("odometer3.json"), "--depth", "1"});
  REQUIRE(odo.code == 0);
  CHECK(odo.report()["weakly_branch"] == false);
  CHECK(odo.report()["witnesses"]["weakly_branch"] != nullptr);

  RunResult flat = run({"branch", "--input", data("s3s3.json")});
  CHECK(flat.code == 2);
  CHECK(flat.error()["error"]["kind"] == "input");
}

TEST_CASE("radicals command") {
  RunResult r = run({"radicals", "--input", data("w4.json")});
  REQUIRE(r.code == 0);
  json rep = r.report();
  CHECK(rep["quasi_hypercentre"]["order"] == 1);
  CHECK(rep["radical"]["order"] == 1);
  CHECK(rep["semisimple"]["ok"] == true);
  CHECK(rep["containment_ok"] == true);
}

TEST_CASE("verification suites") {
  RunResult b = run({"verify", "--suite", "boolean", "--input", data("w4.json")});
  REQUIRE(b.code == 0);
  json rep = b.report();
  CHECK(rep["ok"] == true);
  for (const auto& c : rep["checks"]) CHECK(c["ok"] == true);

  RunResult all = run({"verify", "--suite", "all", "--input", data("w3.json")});
  CHECK(all.code == 0);
  CHECK(all.report()["ok"] == true);
  CHECK(all.report()["checks"].size() >= 10);
}

TEST_CASE("exit codes and error objects") {
  std::string bad = temp_spec("bad.json", "{\"kind\": \"tree\", ");
  RunResult r = run({"ln", "--input", bad});
  CHECK(r.code == 2);
  CHECK(r.error()["error"]["kind"] == "input");
  CHECK(r.error()["error"]["what"].get<std::string>().find("byte") !=
        std::string::npos);

  RunResult missing = run({"ln", "--input", "/tmp/lnlat_no_such_file.json"});
  CHECK(missing.code == 2);

  RunResult noarg = run({});
  CHECK(noarg.code == 2);

  RunResult tight = run({"ln", "--input", data("w3.json"), "--budget", "2"});
  CHECK(tight.code == 3);
  CHECK(tight.error()["error"]["kind"] == "resource");

  RunResult badmargin = run({"lc", "--input", data("w3.json"), "--margin-i", "9",
                             "--margin-j", "0"});
  CHECK(badmargin.code == 2);
}

TEST_CASE("output file matches stdout") {
  std::string path = "/tmp/lnlat_cli_out.json";
  std::remove(path.c_str());
  RunResult direct = run({"lc", "--input", data("w3.json")});
  RunResult filed = run({"lc", "--input", data("w3.json"), "--out", path});
  REQUIRE(filed.code == 0);
  CHECK(filed.out.empty());
  std::ifstream f(path);
  std::ostringstream buf;
  buf << f.rdbuf();
  CHECK(buf.str() == direct.out);
}
