#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mobco/errors.hpp"
#include "mobco/scenario.hpp"
#include "oracles.hpp"

using namespace mobco;
using namespace mobco::scenario;
using mobco::testing::data_dir;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mobco_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string config_text(const std::string& network, const std::string& demand,
                        const std::string& extra = "") {
  return R"({"network": ")" + network + R"(", "demand": ")" + demand +
         R"(", "catalog": {"file": ")" + data_dir() +
         R"(/vehicles.catalog.json", "scenario": "S1"},
           "grid": {"av_fleets": [0, 1000], "subway_levels": [1]})" +
         extra + "}";
}

}  // namespace

TEST(Config, ShippedS1Parses) {
  const ScenarioConfig c = load_config(data_dir() + "/S1.config.json");
  EXPECT_EQ(c.scenario, "S1");
  EXPECT_EQ(c.grid.av_fleets.size(), 10u);
  EXPECT_EQ(c.grid.av_fleets.back(), 4500.0);
  EXPECT_EQ(c.emission_price_usd_per_kg, 40.0);
  EXPECT_EQ(c.hours_per_month, 730.0);
  EXPECT_TRUE(fs::path(c.network_path).is_absolute());
}

TEST(Config, Errors) {
  const std::string g = data_dir() + "/city20.graph.json", d = data_dir() + "/city20.demand.json";
  EXPECT_NO_THROW(parse_config(config_text(g, d), "/"));
  EXPECT_THROW(parse_config(config_text(g, d, R"(, "bogus": 1)"), "/"), ConfigError);
  EXPECT_THROW(parse_config(config_text(g, d, R"(, "solver": {"jobs": 0})"), "/"), ConfigError);
  EXPECT_THROW(parse_config(config_text(g, d, R"(, "params": {"hours_per_month": 800})"), "/"),
               ConfigError);
  EXPECT_THROW(parse_config("{not json", "/"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), IoError);
}

TEST(Commands, ValidateExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_validate(data_dir() + "/S1.config.json", out, err), 0) << err.str();
  EXPECT_NE(out.str().find("210 design points"), std::string::npos);

  const fs::path dir = scratch("validate");
  write(dir / "bad.demand.json",
        R"({"requests": [{"origin": "W0", "destination": "W42", "rate_per_hour": 10}]})");
  write(dir / "bad.config.json",
        config_text(data_dir() + "/city20.graph.json", (dir / "bad.demand.json").string()));
  std::ostringstream out1, err1;
  EXPECT_EQ(cmd_validate((dir / "bad.config.json").string(), out1, err1), 1);
  EXPECT_NE(err1.str().find("W42"), std::string::npos) << err1.str();

  write(dir / "missing.config.json",
        config_text((dir / "nope.graph.json").string(), data_dir() + "/city20.demand.json"));
  std::ostringstream out2, err2;
  EXPECT_EQ(cmd_validate((dir / "missing.config.json").string(), out2, err2), 2);
}

TEST(Commands, SolveWritesOutputsDeterministically) {
  const fs::path a = scratch("solve_a"), b = scratch("solve_b");
  CliOverrides oa, ob;
  oa.jobs = 1;
  oa.output_dir = a.string();
  ob.jobs = 4;
  ob.output_dir = b.string();
  ob.dump_lp = true;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_solve(data_dir() + "/S1.config.json", oa, out, err), 0) << err.str();
  ASSERT_EQ(cmd_solve(data_dir() + "/S1.config.json", ob, out, err), 0) << err.str();
  for (const char* f : {"front3d.csv", "front2d.csv", "all_points.csv", "manifest.json"})
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  EXPECT_TRUE(fs::exists(a / "runtime.json"));
  EXPECT_FALSE(fs::exists(a / "lp"));
  ASSERT_TRUE(fs::is_directory(b / "lp"));
  EXPECT_FALSE(fs::is_empty(b / "lp"));

  std::istringstream rows(slurp(a / "all_points.csv"));
  std::string line;
  std::size_t n = 0;
  while (std::getline(rows, line)) ++n;
  EXPECT_EQ(n, 211u);  // header plus 210 design points

  std::ostringstream pout, perr;
  ASSERT_EQ(cmd_plot_data(a.string(), pout, perr), 0) << perr.str();
  EXPECT_TRUE(fs::exists(a / "staircase.csv"));
}

TEST(Commands, OverridesChangeTheDigest) {
  const fs::path a = scratch("price_a"), b = scratch("price_b");
  CliOverrides oa, ob;
  oa.output_dir = a.string();
  ob.output_dir = b.string();
  ob.emission_price = 0.0;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_solve(data_dir() + "/S1.config.json", oa, out, err), 0);
  ASSERT_EQ(cmd_solve(data_dir() + "/S1.config.json", ob, out, err), 0);
  EXPECT_EQ(slurp(a / "front3d.csv"), slurp(b / "front3d.csv"));
  EXPECT_NE(slurp(a / "manifest.json"), slurp(b / "manifest.json"));
  CliOverrides bad;
  bad.emission_price = -1.0;
  EXPECT_EQ(cmd_solve(data_dir() + "/S1.config.json", bad, out, err), 1);
}

TEST(Commands, PlotDataWithoutResults) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_plot_data(scratch("empty").string(), out, err), 2);
}

TEST(Run, FrontsAreAntichainsAndSorted) {
  const Scenario s = load_scenario(load_config(data_dir() + "/S1.config.json"));
  const ResultSet r = run(s, {});
  EXPECT_EQ(r.points.size(), 210u);
  EXPECT_EQ(r.failures(), 0u);
  ASSERT_FALSE(r.front3d.empty());
  for (std::size_t i = 0; i < r.front3d.size(); ++i)
    for (std::size_t j = 0; j < r.front3d.size(); ++j) {
      if (i == j) continue;
      const auto& p = r.front3d[i].resources;
      const auto& q = r.front3d[j].resources;
      EXPECT_FALSE(p.t_avg_s <= q.t_avg_s && p.cost_usd_per_month <= q.cost_usd_per_month &&
                   p.co2_kg_per_month <= q.co2_kg_per_month);
    }
  for (std::size_t i = 1; i < r.front2d.size(); ++i) {
    EXPECT_LT(r.front2d[i - 1].cost_2d, r.front2d[i].cost_2d);
    EXPECT_GT(r.front2d[i - 1].t_avg_s, r.front2d[i].t_avg_s);
  }
}

TEST(Staircase, Examples) {
  using P = std::pair<double, double>;
  EXPECT_EQ(staircase({{20, 500}, {10, 600}}), (std::vector<P>{{10, 600}, {20, 600}, {20, 500}}));
  EXPECT_EQ(staircase({{5, 5}}), (std::vector<P>{{5, 5}}));
  EXPECT_TRUE(staircase({}).empty());
  EXPECT_THROW(staircase({{10, 600}, {20, 700}}), std::invalid_argument);
}

TEST(Digest, Sha256) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
