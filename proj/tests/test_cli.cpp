#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

using freeembed::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.emplace_back("--format");
  args.emplace_back("json");
  const Run r = run(args);
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("nc") {
  const Run list = run({"nc", "4"});
  CHECK(list.code == 0);
  CHECK(line_count(list.out) == 15);
  CHECK(list.out.find("14 non-crossing partitions") != std::string::npos);
  CHECK(run({"nc", "3", "--kreweras", "{{1,2},{3}}"}).out == "{{1},{2,3}}\n");
  CHECK(run({"nc", "4", "--mobius", "0", "1"}).out == "-5\n");
  CHECK(run({"nc", "4", "--mobius", "{{1},{2},{3,4}}", "{{1,2},{3,4}}"}).out == "-1\n");
  CHECK(run({"nc", "6", "--pairs"}).out.find("5 non-crossing pair partitions") != std::string::npos);

  const auto j = run_json({"nc", "5"});
  CHECK(j.at("count") == 42);
  CHECK(j.at("partitions").size() == 42);
  CHECK(j.at("manifest").at("subcommand") == "nc");

  const Run csv = run({"nc", "3", "--format", "csv"});
  CHECK(csv.out.rfind("index,partition\n", 0) == 0);
  CHECK(line_count(csv.out) == 6);
}

TEST_CASE("nc errors exit with 2") {
  CHECK(run({"nc", "13"}).code == 2);
  CHECK(run({"nc", "3", "--kreweras", "{{1,2}"}).code == 2);
  CHECK(run({"nc", "4", "--kreweras", "{{1,3},{2,4}}"}).code == 2);
  CHECK(run({"nc", "4", "--kreweras", "{{1,2},{3}}"}).code == 2);
  CHECK(run({"nc", "4", "--mobius", "1", "0"}).code == 2);
  CHECK(run({"nc", "5", "--pairs"}).code == 2);
  CHECK(run({"nc"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"nc", "4", "--format", "xml"}).code == 2);
}

TEST_CASE("moment") {
  const Run all = run({"moment", "1,2,1,2", "--symbolic", "--method", "all"});
  CHECK(all.code == 0);
  CHECK(all.out == "lemma2: 1 + 2y\nfree: 1 + 2y\ntheorem2: 1 + 2y\nAGREE\n");
  CHECK(run({"moment", "1,1", "--y", "1/2"}).out == "3/2\n");
  CHECK(run({"moment", "1", "--symbolic"}).out == "1\n");
  CHECK(run({"moment", "1,1,1", "--method", "theorem2"}).out == "1 + 3y + y^2\n");

  const auto j = run_json({"moment", "1,2,1,2", "--y", "1", "--method", "all"});
  CHECK(j.at("verdict") == "AGREE");
  CHECK(j.at("results").at("free").at("value") == "3");
  CHECK(j.at("results").at("lemma2").at("text") == "1 + 2y");

  const Run csv = run({"moment", "1,1", "--y", "2", "--format", "csv"});
  CHECK(csv.out == "method,polynomial,value\nlemma2,\"1 + y\",3\n");

  CHECK(run({"moment", "1,0"}).code == 2);
  CHECK(run({"moment", "1,1", "--y", "1/2", "--symbolic"}).code == 2);
  CHECK(run({"moment", "1,1", "--y", "-1"}).code == 2);
  CHECK(run({"moment", "1,1", "--method", "guess"}).code == 2);
  CHECK(run({"moment", "1,1,1,1,1,1,1,1,1"}).code == 2);
}

TEST_CASE("verify-embedding") {
  const Run r = run({"verify-embedding", "3", "5", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(run({"verify-embedding", "1", "1", "--seed", "1"}).code == 0);
  CHECK(run({"verify-embedding", "10", "7"}).code == 0);
  CHECK(run({"verify-embedding", "4", "9", "--law", "rademacher"}).code == 0);

  const auto j = run_json({"verify-embedding", "6", "3", "--seed", "2"});
  CHECK(j.at("verdict") == "PASS");
  CHECK(j.at("max_abs_deviation").get<double>() <= j.at("tolerance").get<double>());
  CHECK(j.at("manifest").at("seed") == 2);

  CHECK(run({"verify-embedding", "0", "3"}).code == 2);
  CHECK(run({"verify-embedding", "3", "3", "--law", "cauchy"}).code == 2);
}

TEST_CASE("simulate") {
  const auto j = run_json({"simulate", "1,2,1,2", "--p", "20", "--n", "20", "--reps", "5", "--seed", "3"});
  CHECK(j.at("report").at("oracle") == 3.0);
  CHECK(j.at("manifest").at("seed") == 3);
  CHECK(j.at("manifest").at("config").at("reps") == 5);

  const Run csv = run({"simulate", "1,1", "--ladder", "5x10,10x20", "--reps", "3", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(line_count(csv.out) == 3);

  const auto ladder = run_json({"simulate", "1", "--ladder", "4x4,8x8", "--reps", "3"});
  CHECK(ladder.at("reports").size() == 2);

  CHECK(run({"simulate", "1,1", "--reps", "3"}).code == 2);
  CHECK(run({"simulate", "1,1", "--ladder", "5x10,10x10", "--reps", "3"}).code == 2);
  CHECK(run({"simulate", "1,1", "--ladder", "5by10", "--reps", "3"}).code == 2);
  CHECK(run({"simulate", "1,1", "--p", "5", "--n", "5", "--reps", "0"}).code == 2);
  CHECK(run({"simulate", "1,3", "--p", "5", "--n", "5", "--m", "2"}).code == 2);
}

TEST_CASE("identical invocations differ only in the timestamp") {
  const std::vector<std::vector<std::string>> invocations{
      {"simulate", "1,2", "--p", "10", "--n", "15", "--reps", "4", "--seed", "9", "--format", "json"},
      {"verify-embedding", "5", "8", "--seed", "4", "--format", "json"},
      {"moment", "1,2,2,1", "--method", "all", "--format", "json"},
      {"nc", "4", "--format", "json"}};
  for (const auto& args : invocations) {
    auto a = nlohmann::json::parse(run(args).out);
    auto b = nlohmann::json::parse(run(args).out);
    CHECK(a.at("manifest").contains("timestamp"));
    CHECK(a.at("manifest").at("version").is_string());
    a["manifest"].erase("timestamp");
    b["manifest"].erase("timestamp");
    CHECK(a.dump() == b.dump());
  }
}

TEST_CASE("help and version exit 0") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"simulate", "--help"}).code == 0);
  CHECK(run({"--version"}).code == 0);
}
