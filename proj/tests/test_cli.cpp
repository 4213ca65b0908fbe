#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wgql/cli.hpp"

using wgql::cli::main_entry;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "wgql");
  std::ostringstream out, err;
  const int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

}  // namespace

TEST_CASE("exponent-check") {
  const auto r = invoke({"exponent-check"});
  CHECK(r.code == 0);
  CHECK(r.out == "23027/23040\n");
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"sieve"}).code == 2);
  CHECK(invoke({"sieve", "--limit", "ten"}).code == 2);
  CHECK(invoke({"charsum", "--q", "5", "--k", "7"}).code == 2);
  CHECK(invoke({"scan", "--xmax", "100", "--mode", "sideways"}).code == 2);
}

TEST_CASE("precondition failures exit 1 with the module message") {
  const auto r = invoke({"sieve", "--limit", "1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("limit must be at least 2") != std::string::npos);
  CHECK(r.out.empty());

  const auto q = invoke({"charsum", "--q", "0"});
  CHECK(q.code == 1);
  CHECK(q.err.find("q = 0") != std::string::npos);
}

TEST_CASE("every CSV starts with the schema line") {
  const std::vector<std::vector<std::string>> commands{
      {"sieve", "--limit", "30"},
      {"series", "--n", "100", "--plimit", "10"},
      {"p0", "--n", "800", "--x", "1000"},
      {"predict", "--x", "20000", "--sample", "5", "--plimit", "20"},
      {"count", "--n", "60", "--x", "64"},
      {"scan", "--xmax", "200"},
      {"arcs", "--plimit", "3", "--qgrid", "100"},
      {"charsum", "--q", "12", "--k", "3", "--a", "5"},
  };
  for (const auto& c : commands) {
    const auto r = invoke(c);
    CAPTURE(c[0]);
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() >= 2);
    CHECK(l[0] == "# wgql-v1 " + c[0]);
    CHECK(r.out.find('\r') == std::string::npos);
  }
  CHECK(lines(invoke({"predict", "--x", "20000", "--sample", "5", "--plimit", "20"}).out)[1] ==
        "N,weighted_count,p0,series_product,main_term,ratio");
  CHECK(lines(invoke({"scan", "--xmax", "200"}).out)[1] == "N,mode,witness_p2,witness_p3,witness_p4,witness_p5");
}

TEST_CASE("sieve and count rows") {
  const auto s = lines(invoke({"sieve", "--limit", "10"}).out);
  REQUIRE(s.size() == 6);
  CHECK(s[2] == "2,0.693147180559945");
  CHECK(s[5].rfind("7,", 0) == 0);

  const auto c = lines(invoke({"count", "--n", "60", "--x", "64"}).out);
  REQUIRE(c.size() == 3);
  CHECK(c[2] == "60,64,0,0,1,2,2,2,2");
}

TEST_CASE("scan output matches the frozen exceptional list") {
  const auto path = std::filesystem::temp_directory_path() / "wgql_cli_scan.csv";
  const auto r = invoke({"scan", "--xmax", "100000", "--mode", "unconstrained", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream got(path);
  std::vector<std::string> rows;
  for (std::string line; std::getline(got, line);) rows.push_back(line);
  std::filesystem::remove(path);

  std::ifstream fixture(WGQL_FIXTURE_DIR "/exceptional_unconstrained_100000.txt");
  REQUIRE(fixture);
  std::vector<std::string> want;
  for (std::string line; std::getline(fixture, line);)
    if (!line.empty() && line[0] != '#') want.push_back(line + ",unconstrained,,,,");
  REQUIRE(rows.size() == want.size() + 2);
  CHECK(std::equal(want.begin(), want.end(), rows.begin() + 2));
}

TEST_CASE("scan --all lists witnesses") {
  const auto l = lines(invoke({"scan", "--xmax", "60", "--all"}).out);
  REQUIRE(l.size() == 2 + 30);
  CHECK(l.back() == "60,unconstrained,2,2,2,2");
  CHECK(l[2] == "2,unconstrained,,,,");
}

TEST_CASE("identical configuration gives identical bytes") {
  const std::vector<std::string> base{"predict", "--x", "40000", "--sample", "8", "--plimit", "30", "--seed", "3"};
  auto one = base, four = base;
  one.insert(one.begin(), {"--threads", "1"});
  four.insert(four.begin(), {"--threads", "4"});
  const auto a = invoke(one), b = invoke(four), c = invoke(one);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(lines(a.out).size() == 2 + 8);

  auto other = base;
  other.back() = "4";
  CHECK(invoke(other).out != a.out);

  const std::vector<std::string> series{"series", "--n", "31416", "--plimit", "300"};
  auto s1 = series, s4 = series;
  s1.insert(s1.begin(), {"--threads", "1"});
  s4.insert(s4.begin(), {"--threads", "4"});
  CHECK(invoke(s1).out == invoke(s4).out);
}
