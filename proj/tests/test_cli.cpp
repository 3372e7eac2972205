#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "bergman/cli.hpp"
#include "bergman/report.hpp"

using namespace bergman;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("sample to csv is reproducible") {
  const std::string path = "cli_points.csv";
  REQUIRE(call({"sample", "--region", "disc:0.9", "--beta", "5", "--seed", "42", "--out", path}).code == 0);
  const std::string first = slurp(path);
  REQUIRE(call({"sample", "--region", "disc:0.9", "--beta", "5", "--seed", "42", "--out", path}).code == 0);
  CHECK(slurp(path) == first);
  std::remove(path.c_str());

  const auto json = call({"sample", "--region", "disc:0.9", "--seed", "42", "--format", "json"});
  REQUIRE(json.code == 0);
  const PointConfiguration pc = read_sample_json(json.out);
  std::istringstream lines(first);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "re,im");
  std::size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == pc.meta.active.size());
  CHECK(pc.meta.seed == 42);
}

TEST_CASE("json sample round trip") {
  const auto r = call({"sample", "--region", "annulus:0.3:0.95", "--N", "40", "--seed", "7", "--replica", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  const PointConfiguration pc = read_sample_json(r.out);
  CHECK(pc == sample(RestrictedSpectrum::annulus(0.3, 0.95), SamplerConfig{FixedTruncation{40}, 7}, 3));
  CHECK(point_configuration_from_json(to_json(pc)) == pc);
  const Json doc = Json::parse(r.out);
  CHECK(doc["version"] == kToolVersion);
  CHECK(doc["config"]["seed"] == 7);
}

TEST_CASE("default seed is echoed") {
  const auto r = call({"sample", "--region", "disc:0.5", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["config"]["seed"] == 0);
  CHECK(Json::parse(r.out)["config"]["beta"] == 5.0);
}

TEST_CASE("bounds report") {
  const auto r = call({"bounds", "--radius", "0.9", "--beta", "2"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  const Json& v = doc["results"][0]["values"];
  CHECK(v["N_R"].get<double>() == doctest::Approx(4.2631579).epsilon(1e-8));
  CHECK(v["g"].get<double>() == doctest::Approx(0.4263158).epsilon(1e-7));
  CHECK(doc["results"][0]["verdict"] == true);
  const auto m = call({"bounds", "--radius", "0.9", "--epsilon", "0.01", "--N", "100"});
  REQUIRE(m.code == 0);
  CHECK(Json::parse(m.out)["results"][2]["values"]["margin"].get<double>() == doctest::Approx(2.5951030152878031));
}

TEST_CASE("region report") {
  const auto r = call({"region", "--spec", "family:a0=0.2,b0=0.3,u0=0.1,q=0.5,K=50,rule=midpoint"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  bool seen = false;
  for (const auto& res : doc["results"]) {
    if (res["name"] == "trace") {
      CHECK(res["values"]["closed_form"].get<double>() == doctest::Approx(0.2572344).epsilon(1e-7));
      seen = true;
    }
    if (res["name"] == "intervals") CHECK(res["values"].size() == 50);
  }
  CHECK(seen);
}

TEST_CASE("spectrum and moduli") {
  const auto s = call({"spectrum", "--region", "ginibre:2", "--N", "10"});
  REQUIRE(s.code == 0);
  const Json doc = Json::parse(s.out);
  CHECK(doc["results"][1]["values"]["trace"].get<double>() == doctest::Approx(4.0).epsilon(1e-8));
  const auto csv = call({"spectrum", "--region", "disc:0.5", "--N", "4", "--format", "csv"});
  CHECK(csv.out == "n,lambda\n0,0.25\n1,0.0625\n2,0.015625\n3,0.00390625\n");
  const auto m = call({"moduli", "--count", "3", "--reps", "2"});
  REQUIRE(m.code == 0);
  CHECK(std::count(m.out.begin(), m.out.end(), '\n') == 7);
}

TEST_CASE("validation errors exit with 1") {
  CHECK(call({"sample", "--region", "disc:1.2"}).code == 1);
  CHECK(call({"sample", "--region", "square:1"}).code == 1);
  CHECK(call({"sample", "--region", "disc:0.5", "--beta", "2", "--N", "5"}).code == 1);
  CHECK(call({"sample", "--region", "disc:0.5", "--frobnicate"}).code == 1);
  CHECK(call({"bounds", "--radius", "1.5"}).code == 1);
  CHECK(call({"verify", "--suite", "nonsense"}).code == 1);
  CHECK(call({}).code == 1);
  const auto e = call({"region", "--spec", "intervals:0.2-0.5,0.4-0.6"});
  CHECK(e.code == 1);
  CHECK(e.err.find("overlap") != std::string::npos);
}

TEST_CASE("verify gates") {
  const auto ok = call({"verify", "--suite", "bounds", "--suite", "family", "--suite", "spectrum"});
  CHECK(ok.code == 0);
  const auto counts = call({"verify", "--suite", "counts", "--reps", "5000"});
  CHECK(counts.code == 0);
  const auto intensity = call({"verify", "--suite", "intensity", "--reps", "500", "--bins", "3"});
  CHECK(intensity.code == 0);
}

TEST_CASE("report verdicts drive the exit code") {
  Report report(Json::object({{"subcommand", "verify"}}));
  report.add("informational", {{"x", 1}});
  CHECK(report.all_passed());
  report.add(make_gof("gate", 3.0, 2.0, 10));
  CHECK_FALSE(report.all_passed());
  CHECK(report.json()["results"][1]["verdict"] == false);
  CHECK_FALSE(report.json()["results"][0].contains("verdict"));
}
