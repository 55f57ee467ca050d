#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "pfarc/cli.hpp"
#include "pfarc/parse.hpp"
#include "pfarc/ring.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "pfarc");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = pfarc::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json strip_timing(json j) {
  j.erase("timing");
  return j;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("pfarc_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("pfaffian subcommand") {
  const auto r = call({"pfaffian", "--rows", "2,1", "--order", "0"});
  REQUIRE(r.code == 0);
  CHECK(pfarc::poly_from_json(json::parse(r.out)) == pfarc::x_var(2, 1, 2, 0));
  const auto s = call({"pfaffian", "--rows", "1,2"});
  REQUIRE(s.code == 0);
  CHECK(pfarc::poly_from_json(json::parse(s.out)) == -pfarc::x_var(2, 1, 2, 0));
  CHECK(call({"pfaffian", "--rows", "3,2,1"}).code == 2);
  CHECK(call({"pfaffian", "--rows", "a,b"}).code == 2);
}

TEST_CASE("order subcommand") {
  const auto r = call({"order", "--cmp", "j", "--lhs", "d^0|4,3,2,1|", "--rhs", "d^0|2,1|"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("lhs_prec_rhs") == true);
  const auto g = call({"order", "--cmp", "greater", "--lhs", "d^0|3,1|", "--rhs", "|(2,0),(1,0)|"});
  REQUIRE(g.code == 0);
  CHECK(json::parse(g.out).dump().find("true") != std::string::npos);
  CHECK(call({"order", "--cmp", "x", "--lhs", "|2,1|", "--rhs", "|2,1|"}).code == 2);
}

TEST_CASE("enum-standard subcommand") {
  const auto r = call({"enum-standard", "--p", "3", "--h", "2", "--deg", "1", "--wt", "0", "--count-only"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find('3') != std::string::npos);
}

TEST_CASE("straighten subcommand") {
  const auto r = call({"straighten", "--p", "4", "--h", "2", "--expr", "x^0_{1,3}*x^0_{2,4}"});
  REQUIRE(r.code == 0);
  CHECK(!json::parse(r.out).empty());
  CHECK(call({"straighten", "--p", "4", "--h", "2", "--expr", "x^0_{1,3}+x^0_{1,3}*x^0_{2,4}"}).code == 2);
  CHECK(call({"straighten", "--p", "4", "--h", "2", "--expr", "x^0_{1,3"}).code == 2);
}

TEST_CASE("verification subcommands pass and report") {
  const auto r = call({"verify-basis", "--p", "4", "--h", "2", "--deg-max", "2", "--wt-max", "1"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("schema") == "pfarc-report/1");
  CHECK(j.at("verdict") == "pass");
  bool found = false;
  for (const auto& cell : j.at("cells")) {
    if (cell.dump().find("\"n_standard\":20") != std::string::npos) found = true;
  }
  CHECK(found);
  CHECK(call({"verify-leading", "--p", "2,3", "--h", "2", "--deg-max", "2", "--wt-max", "2"}).code == 0);
  CHECK(call({"verify-injectivity", "--p", "3", "--h", "2", "--deg-max", "2", "--wt-max", "1"}).code == 0);
  CHECK(call({"verify-invariance", "--p", "2", "--h", "2", "--k-max", "1", "--m-max", "1"}).code == 0);
  CHECK(call({"invariant-dimension", "--p", "2", "--h", "2", "--deg-max", "2", "--wt-max", "1"}).code == 0);
  CHECK(call({"relations", "--curated"}).code == 0);
  CHECK(call({"qh", "--p", "2", "--h", "2", "--expr", "x^0_{1,2}"}).code == 0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(call({"verify-basis", "--h", "3", "--p", "4"}).code == 2);
  CHECK(call({"verify-basis", "--p", "4", "--threads", "0"}).code == 2);
  CHECK(call({"no-such-command"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"verify-basis", "--p", "4", "--deg-min", "3", "--deg-max", "1"}).code == 2);
  const auto h = call({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("verify-basis") != std::string::npos);
}

TEST_CASE("reports are deterministic across thread counts") {
  const std::vector<std::string> base{"verify-basis", "--p", "2,3,4", "--h", "0,2", "--deg-max", "2", "--wt-max", "2"};
  auto one = base;
  one.insert(one.end(), {"--threads", "1"});
  auto four = base;
  four.insert(four.end(), {"--threads", "4"});
  const auto a = call(one), b = call(four), c = call(four);
  REQUIRE(a.code == 0);
  const json ja = strip_timing(json::parse(a.out));
  const json jb = strip_timing(json::parse(b.out));
  CHECK(jb.at("config").at("threads") == 4);
  json ja2 = ja, jb2 = jb;
  ja2.erase("config");
  jb2.erase("config");
  CHECK(ja2 == jb2);
  CHECK(strip_timing(json::parse(c.out)).dump(2) == jb.dump(2));
}

TEST_CASE("PFARC_THREADS overrides the flag") {
  ::setenv("PFARC_THREADS", "3", 1);
  const auto r = call({"verify-basis", "--p", "3", "--h", "2", "--deg-max", "1", "--wt-max", "1", "--threads", "1"});
  ::unsetenv("PFARC_THREADS");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("config").at("threads") == 3);
}

TEST_CASE("emit writes the report to a file") {
  const auto path = temp_path("emit.json");
  const auto r = call({"verify-injectivity", "--p", "3", "--h", "2", "--deg-max", "1", "--wt-max", "1", "--emit",
                       path.string()});
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  REQUIRE(in);
  const json j = json::parse(in);
  CHECK(j.at("verdict") == "pass");
  std::filesystem::remove(path);
}

TEST_CASE("grids from a config file") {
  const auto path = temp_path("grid.ini");
  {
    std::ofstream cfg(path);
    cfg << "[verify-basis]\np=3\nh=2\ndeg-max=2\nwt-max=1\n";
  }
  const auto r = call({"--config", path.string(), "verify-basis"});
  std::filesystem::remove(path);
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("summary").at("cells") == 3 * 2);
}

TEST_CASE("binary exit codes") {
  const std::string bin = PFARC_BINARY;
  auto status = [&](const std::string& args) {
    const int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status("pfaffian --rows 2,1 --order 0") == 0);
  CHECK(status("verify-basis --p 4 --h 2 --deg-max 2 --wt-max 1") == 0);
  CHECK(status("verify-basis --p 4 --h 3") == 2);
  CHECK(status("--bogus") == 2);
  CHECK(status("--version") == 0);
}
