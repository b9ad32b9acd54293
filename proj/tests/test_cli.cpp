#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <json.hpp>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(GAPCERT_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("epsilon1 json report") {
  Run r = run("epsilon1 --p 1 --q 2 --json --stable");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"] == "1/42");
  CHECK(j["status"] == "proven");
  CHECK(j["tight"] == true);
  CHECK(j["command"] == "epsilon1");
  CHECK(j["witness"] == nlohmann::json::parse("[[2,1],[3,1],[7,1]]"));
  CHECK_FALSE(j.contains("elapsed_ms"));
  CHECK(r.out ==
        R"({"caps":"depth=64,den=4294967296","command":"epsilon1","floor_check":"EQ","floor_index":4,)"
        R"("inputs":{"p":"1","q":"2"},"status":"proven","sylvester_floor":"1/42","tight":true,)"
        R"("value":"1/42","version":"0.1.0","witness":[[2,1],[3,1],[7,1]]})"
        "\n");
}

TEST_CASE("stable runs are byte-identical") {
  for (const char* args : {"epsilon1 --p 3 --q 2 --json --stable", "beta --p 3 --json --stable",
                           "audit-all --json --stable", "glct-gap --p 3 --json --stable"}) {
    CAPTURE(args);
    Run a = run(args);
    Run b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  Run timed = run("epsilon1 --p 1 --q 1 --json");
  CHECK(nlohmann::json::parse(timed.out).contains("elapsed_ms"));
}

TEST_CASE("exit codes") {
  CHECK(run("member --p 2 --value 1/2").code == 0);
  Run nm = run("member --p 2 --value 1/4");
  CHECK(nm.code == 0);
  CHECK(nm.out.find("not a member") != std::string::npos);
  CHECK(run("constants --id 'I(2,1)' --value 66").code == 0);
  CHECK(run("constants --id 'I(2,1)' --value 65").code == 1);
  CHECK(run("epsilon1 --p 3 --q 3 --caps depth=2,den=100").code == 2);
  CHECK(run("constants --id nope").code == 3);
  CHECK(run("beta --p 1").code == 3);
  CHECK(run("curtiss --n 9").code == 3);
  CHECK(run("bogus").code == 3);
  CHECK(run("epsilon1 --p x").code == 3);
  CHECK(run("audit-all").code == 0);
}

TEST_CASE("error reports in json") {
  Run r = run("beta --p 1 --json");
  CHECK(r.code == 3);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("error"));
  CHECK(j["version"] == "0.1.0");
}

TEST_CASE("dimension-one gap reports") {
  auto g = nlohmann::json::parse(run("glct-gap --p 1 --json --stable").out);
  CHECK(g["value"] == "1/6");
  CHECK(g["t"] == "5/6");
  auto l = nlohmann::json::parse(run("lct-gap --p 3 --json --stable").out);
  CHECK(l["value"] == "1/3");
}
