#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rodbreak/cli.hpp"

using namespace rodbreak;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
  json error() const { return json::parse(err); }
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "rodbreak");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("rodbreak_test_cli_" + name);
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("extended values serialize as numbers or signed infinities") {
  CHECK(cli::to_json(Extended::finite(1.5)) == json(1.5));
  CHECK(cli::to_json(Extended::minus_infinity()) == json("-inf"));
  CHECK(cli::to_json(Extended::plus_infinity()) == json("+inf"));
}

TEST_CASE("datum parsing") {
  const InitialDatum s = cli::parse_datum(json::parse(R"({"domain":"circle","family":{"name":"sine","params":{"a":2}}})"));
  CHECK(s.domain() == DatumDomain::circle);
  CHECK(s.value(0.25) == doctest::Approx(2.0));
  const InitialDatum f = cli::parse_datum(json::parse(R"({"domain":"circle","fourier":[[0.5,0],[0,-0.5]]})"));
  CHECK(f.value(0.25) == doctest::Approx(1.5));
  CHECK(f.value(0.0) == doctest::Approx(0.5));
  std::vector<double> v(64);
  for (std::size_t j = 0; j < 64; ++j) v[j] = std::cos(2 * M_PI * j / 64.0);
  const InitialDatum g = cli::parse_datum(json{{"domain", "circle"}, {"samples", v}});
  CHECK(g.value(0.3) == doctest::Approx(std::cos(0.6 * M_PI)).epsilon(1e-12));
  const InitialDatum l = cli::parse_datum(json::parse(R"({"domain":"line","family":{"name":"peakon"}})"));
  CHECK(l.domain() == DatumDomain::line);
  CHECK(l.value(1.0) == doctest::Approx(std::exp(-1.0)));

  for (const char* bad : {R"([])", R"({"family":{"name":"sine"}})", R"({"domain":"torus","family":{"name":"sine"}})",
                          R"({"domain":"circle"})", R"({"domain":"circle","family":{"name":"sine"},"samples":[1]})",
                          R"({"domain":"circle","family":{"name":"sine"},"extra":1})",
                          R"({"domain":"circle","family":{"name":"sine","params":{"q":1}}})",
                          R"({"domain":"circle","family":{"name":"nope"}})", R"({"domain":"line","samples":[1,2]})",
                          R"({"domain":"circle","fourier":[[1]]})", R"({"domain":"circle","samples":[1,2,3]})"})
    CHECK_THROWS(cli::parse_datum(json::parse(bad)));
}

TEST_CASE("reports and exit codes") {
  const Outcome ok = invoke({"eval-i", "--alpha", "2", "--beta", "0"});
  REQUIRE(ok.code == 0);
  CHECK(ok.err.empty());
  const json r = ok.report();
  CHECK(r["command"] == "eval-i");
  for (const char* key : {"tool", "command", "parameters", "results", "provenance"}) CHECK(r.contains(key));
  CHECK(r["results"]["method"] == "closed-form-alpha2");
  CHECK(r["results"]["value"].get<double>() == doctest::Approx(1.737).epsilon(1e-3 / 1.737));

  const Outcome inf = invoke({"eval-i", "--alpha", "3", "--beta", "4"});
  REQUIRE(inf.code == 0);
  CHECK(inf.report()["results"]["value"] == "-inf");

  const Outcome bbm = invoke({"beta-gamma", "--gamma", "0"});
  CHECK(bbm.code == 2);
  CHECK(bbm.out.empty());
  CHECK(bbm.error()["error"]["kind"] == "domain");
  CHECK(bbm.error()["error"]["message"].get<std::string>().find("BBM") != std::string::npos);

  const Outcome na = invoke({"beta-gamma", "--gamma", "-0.539"});
  REQUIRE(na.code == 0);
  CHECK(na.report()["results"]["beta_gamma"] == "+inf");

  const Outcome unknown = invoke({"frobnicate"});
  CHECK(unknown.code == 2);
  CHECK(unknown.error()["error"]["kind"] == "usage");
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"eval-i", "--alpha", "x", "--beta", "0"}).code == 2);
  CHECK(invoke({"eval-i", "--alpha", "nan", "--beta", "0"}).code == 2);
  CHECK(invoke({"check", "--datum", "/nonexistent/datum.json"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"--version"}).code == 0);
}

TEST_CASE("check and inadmissible beta") {
  const std::string d = write_temp("sine.json", R"({"domain":"circle","family":{"name":"sine","params":{"a":1}}})");
  const Outcome ok = invoke({"check", "--datum", d, "--gamma", "1"});
  REQUIRE(ok.code == 0);
  const json v = ok.report()["results"]["verdict"];
  CHECK(v["status"] == "triggered");
  CHECK(v["tstar_bound"].get<double>() == doctest::Approx(1.0 / M_PI).epsilon(1e-9));
  const Outcome low = invoke({"check", "--datum", d, "--gamma", "1", "--beta", "0.1"});
  CHECK(low.code == 2);
  CHECK(low.error()["error"]["kind"] == "domain");
  CHECK(invoke({"check", "--datum", d, "--gamma", "1", "--line"}).code == 2);
  std::filesystem::remove(d);
}

TEST_CASE("finite-difference grid from the environment") {
  ::setenv("RODBREAK_GRID", "512", 1);
  const Outcome small = invoke({"eval-i", "--alpha", "1.5", "--beta", "0.7"});
  ::unsetenv("RODBREAK_GRID");
  const Outcome full = invoke({"eval-i", "--alpha", "1.5", "--beta", "0.7"});
  REQUIRE(small.code == 0);
  REQUIRE(full.code == 0);
  CHECK(small.report()["parameters"]["grid"] == 512);
  CHECK(full.report()["parameters"]["grid"] == 4096);
  const double a = small.report()["results"]["value"], b = full.report()["results"]["value"];
  CHECK(std::abs(a - b) < 1e-6);
  const Outcome flag = invoke({"eval-i", "--alpha", "1.5", "--beta", "0.7", "--grid", "1024"});
  CHECK(flag.report()["parameters"]["grid"] == 1024);
}
