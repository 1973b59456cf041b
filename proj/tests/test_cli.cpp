#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"

using namespace oddform;

namespace {

int run(const std::string& args, const std::string& out = "/dev/null") {
  const std::string cmd = std::string(ODDFORM_CLI) + " " + args + " > " + out + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config(const char* name) { return std::string(" --config ") + ODDFORM_CONFIGS + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("config validation") {
    CHECK_NOTHROW(load_instance(fixtures::f2(3)));
    json bad = fixtures::f2(3);
    bad["colour"] = "blue";
    CHECK_THROWS_AS(load_instance(bad), Error);
    json no_n = fixtures::f2(3);
    no_n.erase("n");
    try {
      load_instance(no_n);
      FAIL("accepted a config without n");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::config_invalid);
    }
    json mu = fixtures::z4(1);
    mu["lambda"] = "minus_one";
    mu["mu"] = "one";
    try {
      load_instance(mu);
      FAIL("accepted mu != bar(mu) lambda");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::mu_constraint_failed);
    }
    const Instance gl = load_instance(fixtures::classical("gl_odd", 2, 1));
    CHECK(gl.ctx->ring().size() == 4);
    CHECK(gl.digest == "F2/gl_odd/n=1");
    json explicit_delta = fixtures::f2(1, json::array({json::array({0, 0})}));
    CHECK(load_instance(explicit_delta).ctx->delta().size() == 1);
  }

  TEST_CASE("exit codes") {
    CHECK(run("verify relations" + config("f2_n3.json")) == 0);
    CHECK(run("verify all" + config("bad_mu.json")) == 2);
    CHECK(run("verify all --config /nonexistent.json") == 2);
    CHECK(run("verify sideways" + config("f2_n1.json")) == 2);
    CHECK(run("repro-example174") == 0);
    CHECK(run("sandwich example174_H --config example174") == 0);
    CHECK(run("enumerate relative --config example174 --cap 2") == 4);
    CHECK(run("bogus") == 2);
  }

  TEST_CASE("enumeration sizes for the M2(F2) lattice") {
    const std::string out = "/tmp/oddform_cli_enum.json";
    REQUIRE(run("enumerate relative --config example174", out) == 0);
    const json j = json::parse(slurp(out));
    CHECK(j["count"] == 5);
    std::vector<std::size_t> sizes;
    for (const json& e : j["entries"]) sizes.push_back(e["size"]);
    CHECK(sizes == std::vector<std::size_t>{1, 4, 4, 4, 16});
    REQUIRE(run("enumerate form-parameters" + config("f2_n1.json"), out) == 0);
    const json f = json::parse(slurp(out));
    bool lo = false, hi = false;
    for (const json& e : f["entries"]) {
      lo = lo || e["is_min"].get<bool>();
      hi = hi || e["is_max"].get<bool>();
    }
    CHECK(lo);
    CHECK(hi);
  }

  TEST_CASE("orbits without witnesses are singletons") {
    const std::string out = "/tmp/oddform_cli_orbits.json";
    REQUIRE(run("orbits --config example174", out) == 0);
    const json j = json::parse(slurp(out));
    CHECK(j["partition"]["label"] == "reachable-closure");
    CHECK(j["partition"]["blocks"].size() == 5);
  }

  TEST_CASE("reports are deterministic") {
    const std::string a = "/tmp/oddform_cli_a.json", b = "/tmp/oddform_cli_b.json";
    REQUIRE(run("verify congruence --seed 9" + config("z4_n3.json") + " --out " + a) == 0);
    REQUIRE(run("verify congruence --seed 9" + config("z4_n3.json") + " --out " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());
  }

  TEST_CASE("pretty rendering") {
    const std::string out = "/tmp/oddform_cli_pretty.json";
    REQUIRE(run("repro-example174 --pretty", out) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\"rows\"") != std::string::npos);
    CHECK(text.find("\"entries\"") == std::string::npos);
  }
}
