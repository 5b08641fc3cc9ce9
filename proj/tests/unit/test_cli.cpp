#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "supreg/cli.hpp"
#include "supreg/prime_field.hpp"

using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = supreg::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json last_json_line(const std::string& text) {
  std::istringstream in(text);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  return Json::parse(last);
}

}  // namespace

TEST_CASE("verify") {
  auto r = run({"verify", "--p", "11", "--entries", "1,1,6,1,5,4"});
  CHECK(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["schema_version"] == "1");
  CHECK(j["result"]["superregular"] == true);
  CHECK(j["result"]["matrix"]["entries"] == Json({1, 1, 6, 1, 5, 4}));

  r = run({"verify", "--p", "7", "--entries", "1,1,1"});
  CHECK(r.code == 1);
  j = Json::parse(r.out);
  CHECK(j["result"]["superregular"] == false);
  CHECK(j["result"]["first_failure"]["rows"].size() == 2);

  r = run({"verify", "--p", "11", "--entries", "1,1,1/2,1,-1/2", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("11,5,1 1 6 1 5,true") != std::string::npos);
}

TEST_CASE("forbidden") {
  auto r = run({"forbidden", "--p", "13", "--prefix", "1,1,1/2", "--symbolic", "--provenance"});
  CHECK(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["result"]["values"] == Json({0, 7, 10}));
  CHECK(j["result"]["values_symbolic"] == Json({"0", "1/2", "-3"}));
  CHECK(j["result"]["provenance"].size() == 3);
  CHECK(j["result"]["candidates"].size() == 10);

  r = run({"forbidden", "--p", "7", "--prefix", "1,0,0"});
  CHECK(r.code == 1);
  CHECK(Json::parse(r.out)["result"]["dead"] == true);
}

TEST_CASE("census") {
  auto r = run({"census", "--gamma", "8"});
  CHECK(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["result"]["count_L"] == 429);
  CHECK(j["result"]["n_gamma"] == 232);
  CHECK(j["result"]["distinct"] == 231);
  CHECK(run({"census", "--gamma", "0"}).code == 2);
}

TEST_CASE("search commands") {
  auto r = run({"search", "exhaustive", "--gamma", "7", "--p", "17", "--mode", "count", "--threads", "2"});
  CHECK(r.code == 0);
  auto j = last_json_line(r.out);
  CHECK(j["type"] == "summary");
  CHECK(j["result"]["count"] == 8);
  CHECK(j["result"]["complete"] == true);

  r = run({"search", "exhaustive", "--gamma", "7", "--p", "17", "--mode", "enumerate"});
  CHECK(r.code == 0);
  int matrices = 0;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) matrices += Json::parse(line)["type"] == "matrix";
  CHECK(matrices == 8);

  r = run({"search", "exhaustive", "--gamma", "6", "--p", "7", "--mode", "first"});
  CHECK(r.code == 1);

  r = run({"search", "min-field", "--gamma", "5", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("5,100,7,") != std::string::npos);

  r = run({"search", "min-forbidden", "--gamma", "6", "--p", "19"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["result"]["minimum"] == 12);

  r = run({"search", "conjecture", "--gamma", "6", "--p", "29"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["result"]["satisfied"] == true);

  r = run({"search", "random", "--gamma", "7", "--p", "17", "--trials", "3000", "--seed", "4", "--tail", "1"});
  CHECK(r.code == 0);
  j = last_json_line(r.out);
  CHECK(j["result"]["trials"] == 3000);
  CHECK(j["result"]["generator"] == "mt19937_64+splitmix64");
  auto again = run({"search", "random", "--gamma", "7", "--p", "17", "--trials", "3000", "--seed", "4", "--tail", "1",
                    "--threads", "3"});
  CHECK(last_json_line(again.out)["result"]["hits"] == j["result"]["hits"]);
}

TEST_CASE("checkpoint and resume") {
  const auto path = std::filesystem::temp_directory_path() / "supreg_cli_checkpoint.jsonl";
  std::filesystem::remove(path);
  auto a = run({"search", "min-forbidden", "--gamma", "7", "--p", "23", "--budget", "3000", "--checkpoint",
                path.string(), "--threads", "1"});
  CHECK(a.code == 1);
  CHECK(Json::parse(a.out)["result"]["complete"] == false);
  // Simulate a torn final line from an interrupted run.
  std::ofstream(path, std::ios::app) << "{\"type\":\"unit\",\"key\":";
  auto b = run({"search", "min-forbidden", "--gamma", "7", "--p", "23", "--checkpoint", path.string()});
  CHECK(b.code == 0);
  auto jb = Json::parse(b.out);
  CHECK(jb["result"]["complete"] == true);
  CHECK(jb["result"]["minimum"] == 21);
  CHECK(jb["result"]["units_resumed"].get<int>() > 0);
  auto c = run({"search", "min-forbidden", "--gamma", "7", "--p", "23"});
  CHECK(Json::parse(c.out)["result"]["argmin"] == jb["result"]["argmin"]);
  std::filesystem::remove(path);
}

TEST_CASE("partial exhaustive count and edited checkpoint") {
  const auto path = std::filesystem::temp_directory_path() / "supreg_cli_tamper.jsonl";
  std::filesystem::remove(path);
  const std::vector<std::string> cmd{"search", "exhaustive", "--gamma", "7", "--p", "23", "--mode", "count",
                                     "--checkpoint", path.string(), "--threads", "1"};
  auto args = cmd;
  args.insert(args.end(), {"--budget", "3000"});
  auto a = run(args);
  CHECK(a.code == 1);
  CHECK(Json::parse(a.out)["result"]["complete"] == false);

  std::vector<std::string> lines;
  {
    std::ifstream in(path);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
  }
  REQUIRE(!lines.empty());
  auto first = Json::parse(lines[0]);
  first["unit"]["count"] = first["unit"]["count"].get<int>() + 1;
  lines[0] = first.dump();
  {
    std::ofstream out(path, std::ios::trunc);
    for (const auto& l : lines) out << l << '\n';
  }
  CHECK(run(cmd).code == 3);
  std::filesystem::remove(path);
}

TEST_CASE("construct and witness") {
  auto r = run({"construct", "--gamma", "6", "--p", "11"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["result"]["entries"] == Json({1, 1, 6, 1, 5, 4}));
  r = run({"construct", "--gamma", "6", "--p", "37", "--variant", "sqrt3", "--symbolic"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["result"]["entries"] == Json({1, 1, 19, 33, 19, 10}));
  CHECK(run({"construct", "--gamma", "6", "--p", "7"}).code == 2);
  CHECK(run({"construct", "--gamma", "6", "--p", "9"}).code == 2);
  CHECK(run({"construct", "--gamma", "6", "--p", "13", "--variant", "sqrt2"}).code == 2);

  r = run({"witness", "--gamma", "9", "--p", "59"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["result"]["superregular"] == true);
  CHECK(run({"witness", "--gamma", "9", "--p", "61"}).code == 0);
  CHECK(run({"witness", "--gamma", "9", "--p", "67"}).code == 1);
}

TEST_CASE("reproduce") {
  auto r = run({"reproduce", "table6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("8,31,\"7,22,20,2,13,5\",30,true,pass") != std::string::npos);
  r = run({"reproduce", "table2", "--p-max", "17"});
  CHECK(r.code == 0);
  CHECK(r.out.find("6,27,13,11,11,true,pass") != std::string::npos);
  r = run({"reproduce", "table2", "--p-max", "19"});
  CHECK(r.code == 1);
  CHECK(r.out.find("6,27,19,12,13,true,fail") != std::string::npos);
  r = run({"reproduce", "table3", "--p-max", "23", "--budget", "1000"});
  CHECK(r.out.find("skipped: budget") != std::string::npos);
  CHECK(run({"reproduce", "table4"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"verify", "--p", "11"}).code == 2);
  CHECK(run({"verify", "--p", "11", "--entries", "1,x"}).code == 2);
  CHECK(run({"verify", "--p", "11", "--entries", "1,1/11"}).code == 2);
  CHECK(run({"search", "exhaustive", "--gamma", "7", "--p", "17", "--mode", "sideways"}).code == 2);
  CHECK(run({"verify", "--p", "11", "--entries", "1", "--format", "xml"}).code == 2);
  auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("reproduce") != std::string::npos);
}

TEST_CASE("rational aliases") {
  using supreg::cli::rational_alias;
  CHECK(rational_alias(7, 13) == "1/2");
  CHECK(rational_alias(10, 13) == "-3");
  CHECK(rational_alias(76, 101) == "1/4");
  CHECK(rational_alias(0, 13) == "0");
  CHECK(rational_alias(12, 13) == "-1");
  CHECK(rational_alias(5, 11) == "-1/2");
  CHECK(rational_alias(500002, 1000003) == "1/2");
  const supreg::PrimeField f(1000003);
  for (std::uint64_t v = 0; v < 3000; v += 7) {
    const auto a = rational_alias(v, 1000003);
    if (!a.empty()) CHECK(supreg::parse_rational(a, f).value() == v);
  }
}
