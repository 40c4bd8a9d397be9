#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "psipoint/parallel.hpp"

using psipoint::run_cli;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("npoint document") {
  const auto r = cli({"npoint", "--n", "3", "--order", "6", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["n"] == 3);
  CHECK(j["order"] == 6);
  const auto& first = j["entries"][0];
  CHECK(first["g"] == 0);
  CHECK(first["d"] == Json::array({0, 0, 0}));
  CHECK(first["value"] == "1");
  // g = 0, 1, 2 with sum(d) = 0, 3, 6
  CHECK(j["entries"].size() == 1 + 10 + 28);
  for (const auto& e : j["entries"]) {
    if (e["g"] == 1 && e["d"] == Json::array({1, 1, 1})) CHECK(e["value"] == "1/12");
  }
}

TEST_CASE("entries are ordered by (g, d) and output is byte-stable") {
  const auto a = cli({"npoint", "--n", "2", "--order", "8"});
  const auto b = cli({"npoint", "--n", "2", "--order", "8"});
  CHECK(a.out == b.out);
  const auto j = Json::parse(a.out);
  for (std::size_t i = 1; i < j["entries"].size(); ++i) {
    const auto& p = j["entries"][i - 1];
    const auto& q = j["entries"][i];
    const auto kp = std::make_pair(p["g"].get<int>(), p["d"].get<std::vector<int>>());
    const auto kq = std::make_pair(q["g"].get<int>(), q["d"].get<std::vector<int>>());
    CHECK(kp < kq);
  }
}

TEST_CASE("csv output") {
  const auto r = cli({"npoint", "--n", "2", "--order", "2", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "g,d1,d2,value\n1,0,2,1/24\n1,1,1,1/24\n1,2,0,1/24\n");
  const auto top = cli({"--format", "csv", "npoint", "--n", "1", "--order", "4"});
  CHECK(top.out == "g,d1,value\n1,1,1/24\n2,4,1/1152\n");
}

TEST_CASE("intersect with oracle check") {
  const auto r = cli({"intersect", "--g", "2", "--d", "4", "--check", "oracle"});
  REQUIRE(r.code == 0);
  const auto e = Json::parse(r.out)["entries"][0];
  CHECK(e["value"] == "1/1152");
  CHECK(e["check"] == "ok");
  const auto three = cli({"intersect", "--g", "1", "--d", "0,1,2"});
  CHECK(Json::parse(three.out)["entries"][0]["value"] == "1/12");
  CHECK(cli({"intersect", "--g", "1", "--d", "1", "--check", "nothing"}).code == 1);
}

TEST_CASE("dr and drpush") {
  const auto r = cli({"dr", "--a", "3,-3", "--d", "1,0"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["entries"][0]["value"] == "1/3");
  CHECK(j["entries"][0]["g"] == 1);

  const auto all = cli({"dr", "--a", "1,1,-2", "--order", "2", "--format", "csv"});
  CHECK(all.out.rfind("g,d1,d2,d3,value\n0,0,0,0,1\n", 0) == 0);

  const auto push = cli({"drpush", "--a", "1,2,3,-8", "--b", "2", "--order", "4"});
  REQUIRE(push.code == 0);
  for (const auto& e : Json::parse(push.out)["entries"]) {
    CHECK(e["series"] == e["direct"]);
    CHECK(e["check"] == "ok");
  }
  CHECK(cli({"dr", "--a", "1,2", "--d", "1,0"}).code == 1);
  CHECK(cli({"dr", "--a", "1,-1", "--d", "1,1"}).code == 1);
  CHECK(cli({"drpush", "--a", "1,-1", "--order", "2"}).code == 1);
}

TEST_CASE("pn") {
  const auto sym = cli({"pn", "--n", "2", "--order", "2", "--format", "csv"});
  REQUIRE(sym.code == 0);
  CHECK(sym.out == "d1,d2,value\n0,0,1\n0,2,1/24*a1^2\n1,1,-1/12*a1*a2\n2,0,1/24*a2^2\n");
  const auto num = cli({"pn", "--a", "2,1", "--order", "2", "--format", "csv"});
  CHECK(num.out == "d1,d2,value\n0,0,1\n0,2,1/6\n1,1,-1/6\n2,0,1/24\n");
  CHECK(cli({"pn", "--order", "2"}).code == 1);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"bogus"}).code == 1);
  CHECK(cli({"npoint", "--n", "x", "--order", "1"}).code == 1);
  CHECK(cli({"npoint", "--n", "2"}).code == 1);
  CHECK(cli({"npoint", "--n", "2", "--order", "1", "--format", "xml"}).code == 1);
  CHECK(cli({"selftest", "--level", "slow"}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("--out writes the document to a file") {
  const auto path = std::filesystem::temp_directory_path() / "psipoint_cli_test.json";
  const auto r = cli({"npoint", "--n", "1", "--order", "4", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == cli({"npoint", "--n", "1", "--order", "4"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("parallelism flag and environment fallback") {
  CHECK(cli({"--parallelism", "1", "npoint", "--n", "1", "--order", "1"}).code == 0);
  CHECK(psipoint::parallelism() == 1);
  CHECK(cli({"npoint", "--n", "1", "--order", "1", "--parallelism", "2"}).code == 0);
  CHECK(psipoint::parallelism() == 2);
  ::setenv("PSI_POINT_PARALLELISM", "3", 1);
  CHECK(cli({"npoint", "--n", "1", "--order", "1"}).code == 0);
  CHECK(psipoint::parallelism() == 3);
  ::setenv("PSI_POINT_PARALLELISM", "many", 1);
  CHECK(cli({"npoint", "--n", "1", "--order", "1"}).code == 1);
  ::unsetenv("PSI_POINT_PARALLELISM");
  CHECK(cli({"--parallelism", "-1", "npoint", "--n", "1", "--order", "1"}).code == 1);
  psipoint::set_parallelism(0);
}

TEST_CASE("selftest quick") {
  const auto r = cli({"selftest", "--level", "quick"});
  CHECK(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["entries"].size() == 9);
}
