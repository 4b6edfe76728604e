#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eqgirth/cli.hpp"
#include "eqgirth/errors.hpp"

using namespace eqgirth;
using namespace eqgirth::cli;

namespace {

RunConfig quiet() {
  RunConfig c;
  c.timing = false;
  return c;
}

const CheckResult* find(const Report& r, std::string_view name) {
  for (const auto& x : r.results) {
    if (x.name == name) return &x;
  }
  return nullptr;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("parse_fraction") {
  CHECK(parse_fraction("1/120") == 1.0 / 120);
  CHECK(parse_fraction("0.25") == 0.25);
  CHECK(parse_fraction("-3/4") == -0.75);
  CHECK(parse_fraction("1e-3") == 1e-3);
  CHECK_THROWS_AS(parse_fraction("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_fraction("abc"), ConfigError);
  CHECK_THROWS_AS(parse_fraction("1/"), ConfigError);
  CHECK_THROWS_AS(parse_fraction(""), ConfigError);
  CHECK_THROWS_AS(parse_fraction("1/2/3"), ConfigError);
}

TEST_CASE("validate") {
  CHECK_NOTHROW(validate(RunConfig{}));
  RunConfig c;
  c.delta = 0.2;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = RunConfig{};
  c.resolution = 0.5;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = RunConfig{};
  c.grid_phi = 8;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = RunConfig{};
  c.perturb_amplitude = 0.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  CHECK_THROWS_AS(execute("nope", RunConfig{}), ConfigError);
}

TEST_CASE("json serialization") {
  nlohmann::ordered_json j = {{"third", 1.0 / 3}, {"one", 1.0}, {"n", 3}, {"s", "a\"b"}};
  const std::string s = dump_json(j, -1);
  CHECK(s == R"({"third":0.33333333333333331,"one":1.0,"n":3,"s":"a\"b"})");
  // Round trip keeps every bit.
  CHECK(nlohmann::json::parse(s)["third"].get<double>() == 1.0 / 3);
}

TEST_CASE("csv dump") {
  const CsvTable t{"x", {"a", "b"}, {{0.5, 1.0 / 3}, {0.0, 2.0}}};
  CHECK(dump_csv(t) == "a,b\n0.5,0.33333333333333331\n0.0,2.0\n");
}

TEST_CASE("subcommands") {
  SUBCASE("bounds") {
    const RunOutput o = execute("bounds", quiet());
    CHECK(o.report.all_pass());
    CHECK(find(o.report, "bounds.antipodal_lower")->value.get<double>() == 0.5);
    CHECK(find(o.report, "bounds.antipodal_upper")->value.get<double>() == 0.5);
    CHECK(find(o.report, "bounds.unoriented_diameter")->value.get<double>() == 0.25);
    CHECK(o.report.details["quadrature_caps"].size() == 20);
  }
  SUBCASE("optimize") {
    RunConfig c = quiet();
    c.format = OutputFormat::csv;
    const RunOutput o = execute("optimize", c);
    CHECK(o.report.all_pass());
    CHECK(find(o.report, "optimize.max_value")->value.get<double>() == 1.0 / 3);
    const auto& argmax = o.report.details["argmax"];
    bool has_x0 = false;
    for (const auto& q : argmax) {
      has_x0 |= q[0] == 1.0 / 3 && q[1] == 1.0 / 3 && q[2] == 1.0 / 6 && q[3] == 1.0 / 6;
    }
    CHECK(has_x0);
    REQUIRE(o.tables.size() == 1);
    CHECK(o.tables[0].rows.size() == 61u * 61);
    CHECK(o.tables[0].header.size() == 3);
    // Row-major: a1 outer, a2 inner.
    CHECK(o.tables[0].rows[1][0] == 0.0);
    CHECK(o.tables[0].rows[1][1] == 0.5 / 60);
  }
  SUBCASE("perturb") {
    const RunOutput o = execute("perturb", quiet());
    CHECK(o.report.all_pass());
    CHECK(find(o.report, "perturb.intersections")->value.get<int>() == 6);
    CHECK(find(o.report, "perturb.lemma1_bound")->value.get<double>() < 0.5);
  }
  SUBCASE("module errors fail the run") {
    RunConfig c = quiet();
    c.perturb_r = c.perturb_s = 4;
    const RunOutput o = execute("perturb", c);
    CHECK_FALSE(o.report.all_pass());
    CHECK(find(o.report, "perturb.error") != nullptr);
  }
  SUBCASE("a failing check fails the run") {
    RunConfig c = quiet();
    c.resolution = 0.1;  // grid misses 1/3 without refinement
    const RunOutput o = execute("optimize", c);
    CHECK_FALSE(find(o.report, "optimize.max_value")->pass);
    CHECK_FALSE(o.report.all_pass());
  }
}

TEST_CASE("all is the conjunction of the parts") {
  const RunConfig c = quiet();
  const RunOutput all = execute("all", c);
  std::size_t total = 0;
  bool conj = true;
  for (std::string_view sub : kSubcommands) {
    if (sub == "all") continue;
    const RunOutput part = execute(sub, c);
    total += part.report.results.size();
    conj = conj && part.report.all_pass();
  }
  CHECK(all.report.results.size() == total);
  CHECK(all.report.all_pass() == conj);
  CHECK(all.report.all_pass());
  CHECK(all.report.wall_time_ms == 0.0);
}

TEST_CASE("run writes deterministic reports") {
  const auto dir = std::filesystem::temp_directory_path() / "eqgirth_test_cli";
  std::filesystem::remove_all(dir);
  RunConfig c = quiet();
  c.out_dir = dir / "one";
  std::ostringstream log;
  CHECK(run("winding", c, log) == kExitPass);
  c.out_dir = dir / "two";
  CHECK(run("winding", c, log) == kExitPass);
  const std::string a = slurp(dir / "one" / "winding.json");
  CHECK_FALSE(a.empty());
  CHECK(a == slurp(dir / "two" / "winding.json"));
  const auto j = nlohmann::json::parse(a);
  CHECK(j["schema"] == 1);
  CHECK(j["subcommand"] == "winding");
  for (const auto& r : j["results"]) {
    for (const char* key : {"name", "value", "expected", "tolerance", "pass", "paper_ref"}) {
      CHECK(r.contains(key));
    }
  }

  RunConfig bad = quiet();
  bad.out_dir = dir / "bad";
  bad.eps = 2.0;
  CHECK(run("bounds", bad, log) == kExitConfigError);
  CHECK(run("bogus", quiet(), log) == kExitConfigError);
  std::filesystem::remove_all(dir);
}
