#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "output.hpp"

using namespace shrinkdim::cli;

namespace {
struct Run {
  int status;
  std::string out, err;
};
Run invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int status = run(args, out, err);
  return {status, out.str(), err.str()};
}
}  // namespace

TEST_CASE("range parsing") {
  CHECK(parse_range("2..6") == std::pair{2, 6});
  CHECK(parse_range("3") == std::pair{3, 3});
  CHECK_THROWS(parse_range("6..2"));
  CHECK_THROWS(parse_range("0..2"));
  CHECK_THROWS(parse_range("a..b"));
}

TEST_CASE("number formatting") {
  CHECK(num(0.5) == "0.5");
  CHECK(num(INFINITY) == "inf");
  CHECK(num(-INFINITY) == "-inf");
}

TEST_CASE("csv quoting") {
  Table t;
  t.header = {"a", "b"};
  t.add({"1,2", "x\"y"});
  CHECK(t.csv() == "a,b\n\"1,2\",\"x\"\"y\"\n");
}

TEST_CASE("predim subcommand writes a csv table") {
  Run r = invoke({"predim", "--B", "4", "--target", "zero", "--n", "1..2"});
  CHECK(r.status == 0);
  CHECK(r.out.rfind("n,a1z,s1_lo,s1_hi", 0) == 0);
  CHECK(r.out.find("\n2,inf,") != std::string::npos);
}

TEST_CASE("json output carries the schema version") {
  Run r = invoke({"simulate", "--x", "7/23", "--N", "3", "--format", "json"});
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == kSchemaVersion);
  CHECK(j["command"] == "simulate");
  CHECK(j["hits"].size() == 3);
}

TEST_CASE("errors are structured") {
  Run bad = invoke({"predim", "--B", "1"});
  CHECK(bad.status == 2);
  auto j = nlohmann::json::parse(bad.err);
  CHECK(j["error"]["code"] == "InvalidArgument");

  Run usage = invoke({"predim", "--unknown"});
  CHECK(usage.status == 2);
  CHECK(nlohmann::json::parse(usage.err)["error"]["code"] == "UsageError");

  Run help = invoke({"--help"});
  CHECK(help.status == 0);
  CHECK(help.out.find("predim") != std::string::npos);
}

TEST_CASE("configuration file supplies defaults and flags override it") {
  const char* path = "shrinkdim_test_config.toml";
  write_text(path, "[simulate]\nx = \"2/5\"\nN = 2\n");
  Run r = invoke({"--config", path, "simulate", "--N", "4"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("\n4,") != std::string::npos);
  CHECK(r.out.find("\n5,") == std::string::npos);
  std::remove(path);
}
