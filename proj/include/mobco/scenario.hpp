#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mobco/mobility.hpp"

namespace mobco::scenario {

/// Parsed scenario config. Paths are resolved against the config's directory.
struct ScenarioConfig {
  std::string source;  // config path, empty when parsed from text
  std::string network_path;
  std::string demand_path;
  std::string catalog_path;
  std::string scenario;
  mobility::DesignGrid grid;

  std::optional<double> beta;
  std::optional<double> walk_speed_mph;
  std::optional<double> gamma_g_per_kj;
  std::optional<double> av_kj_per_mile;
  std::optional<double> mm_kj_per_mile;
  double hours_per_month = mobility::kDefaultHoursPerMonth;
  double emission_price_usd_per_kg = mobility::kDefaultEmissionPrice;

  int jobs = 1;
  bool dump_lp = false;
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  std::string output_dir;
};

/// Throws ConfigError on unknown fields, empty grids or out-of-range values.
ScenarioConfig parse_config(const std::string& json_text, const std::string& base_dir);
/// Throws IoError when unreadable.
ScenarioConfig load_config(const std::string& path);

/// Loaded inputs plus the raw bytes they were read from, for hashing.
struct Scenario {
  ScenarioConfig config;
  std::shared_ptr<const mobility::MobilitySystem> system;
  std::string input_digest;  // SHA-256 over inputs and result-relevant settings
};

/// Reads every referenced file. IoError for unreadable files, ConfigError
/// for malformed or inconsistent content.
Scenario load_scenario(const ScenarioConfig& config);

std::string sha256_hex(const std::string& bytes);

struct PointResult {
  mobility::DesignPoint point;
  mobility::FlowKey key;
  flow::FlowStatus status = flow::FlowStatus::NumericalFailure;
  std::string message;
  mobility::ResourceTriple resources;  // meaningful when Optimal
};

struct FrontRow {
  mobility::ResourceTriple resources;
  mobility::RecordDesign design;
};

struct Front2dRow {
  double t_avg_s = 0.0;
  double cost_2d = 0.0;
  mobility::RecordDesign design;
};

struct ResultSet {
  std::string input_digest;
  std::vector<PointResult> points;
  std::vector<FrontRow> front3d;   // lexicographic in (t, C, m)
  std::vector<Front2dRow> front2d; // time descending, cost ascending
  std::size_t lp_solves = 0;
  double seconds = 0.0;
  std::size_t failures() const;
};

struct RunOptions {
  int jobs = 1;
  std::string lp_dump_dir;  // empty: no dump
};

/// Solves every distinct routing problem of the grid on a pool of `jobs`
/// threads, then the co-design diagram. Output is independent of `jobs`.
ResultSet run(const Scenario& scenario, const RunOptions& options);

/// Writes front3d.csv, front2d.csv, all_points.csv, manifest.json and
/// runtime.json into dir, creating it if needed.
void write_results(const Scenario& scenario, const ResultSet& results, const std::string& dir);

/// Step-plot vertices of a 2D front given as (cost, time) pairs: cost
/// ascending, time descending, with a corner between consecutive points.
std::vector<std::pair<double, double>> staircase(std::vector<std::pair<double, double>> front);

struct CliOverrides {
  std::optional<int> jobs;
  bool dump_lp = false;
  std::optional<double> emission_price;
  std::optional<double> hours_per_month;
  std::optional<std::string> output_dir;
};

// Commands. Exit codes: 0 ok, 1 invalid input or failed run, 2 unreadable files.
int cmd_validate(const std::string& config_path, std::ostream& out, std::ostream& err);
int cmd_solve(const std::string& config_path, const CliOverrides& overrides, std::ostream& out,
              std::ostream& err);
int cmd_plot_data(const std::string& results_dir, std::ostream& out, std::ostream& err);

}  // namespace mobco::scenario
