#pragma once

#include <compare>
#include <functional>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mobco/codesign.hpp"
#include "mobco/flow.hpp"
#include "mobco/network.hpp"

namespace mobco::mobility {

inline constexpr double kDefaultHoursPerMonth = 730.0;
inline constexpr double kDefaultEmissionPrice = 40.0;  // $/kg

/// One purchasable vehicle: AV (speed and automation level) or MM type.
struct VehicleEntry {
  std::string id;
  double speed_mph = 0.0;
  double fixed_cost_usd = 0.0;  // vehicle plus automation
  double op_cost_usd_per_mile = 0.0;
  double life_years = 0.0;
  double emissions_kg_per_mile = 0.0;  // MM only
  codesign::Attributes attributes;
};

struct VehicleCatalog {
  std::string name;
  std::vector<VehicleEntry> entries;
  /// Throws ConfigError on empty catalogs, duplicate ids, non-positive
  /// costs, speeds or lives.
  void validate() const;
};

struct SubwayDesign {
  double baseline_trains = 112.0;
  double fixed_cost_usd_per_train = 14.5e6;
  double life_years = 30.0;
  std::map<double, double> op_cost_usd_per_year_by_level{
      {1.0, 148e6}, {1.5, 222e6}, {2.0, 295e6}};
  double baseline_frequency_per_min = 1.0 / 6.0;

  /// Throws ConfigError if level is not a key of the op-cost table.
  double op_cost_per_year(double level) const;
  double total_trains(double level) const { return baseline_trains * level; }
  double acquired_trains(double level) const { return baseline_trains * (level - 1.0); }
  void validate() const;
};

/// C_S in $/month: amortized acquired trains plus operations.
double subway_cost(const SubwayDesign& design, double level);

// Shared arithmetic of the cost and emission totals. Every path that
// produces a resource triple goes through these.
double av_fleet_cost(double fixed_cost_usd, double life_years, double op_cost_usd_per_mile,
                     double fleet, double miles_per_hour, double hours_per_month);
double mm_amortized_cost(double fixed_cost_usd, double life_years);  // $/vehicle/month
double mm_fleet_cost(double amortized_usd_per_month, double op_cost_usd_per_mile, double fleet,
                     double miles_per_hour, double hours_per_month);
double total_cost(double c_v, double c_m, double c_s);
double total_emissions(double av_kg_per_hour, double mm_kg_per_mile, double mm_miles_per_hour,
                       double hours_per_month, double train_kg_per_year, double trains);

struct DesignGrid {
  std::vector<double> av_fleets;
  std::vector<double> mm_fleets;
  std::vector<double> subway_levels;
};

/// One choice of every design variable.
struct DesignPoint {
  std::size_t av_entry = 0;
  double n_v_max = 0.0;
  std::optional<std::size_t> mm_entry;
  double n_m_max = 0.0;
  double subway_level = 1.0;
};

struct ResourceTriple {
  double t_avg_s = 0.0;
  double cost_usd_per_month = 0.0;
  double co2_kg_per_month = 0.0;
  bool operator==(const ResourceTriple&) const = default;
};

struct FleetCosts {
  double c_v = 0.0;
  double c_m = 0.0;
};

struct Monetized {
  double t_avg_s = 0.0;
  double cost_2d = 0.0;
};

/// Network, demand, catalogs and grid: everything a design study needs.
struct MobilitySystem {
  network::Network network;  // raw, before filtering and travel times
  network::DemandSet demand;
  network::NetworkParams params;
  network::EnergyModel energy = network::EnergyModel::defaults();
  VehicleCatalog av;
  std::optional<VehicleCatalog> mm;
  SubwayDesign subway;
  DesignGrid grid;
  double hours_per_month = kDefaultHoursPerMonth;
  double train_emissions_kg_per_year = 140000.0;

  /// Throws ConfigError on inconsistent grids or catalogs, including AV
  /// entries with different lives and subway levels without an op cost.
  void validate() const;
  double av_life_years() const;
  /// Every grid point, AV entry outermost, subway level innermost.
  std::vector<DesignPoint> design_points() const;
};

FleetCosts fleet_costs(const flow::FlowSolution& solution, const DesignPoint& point,
                       const MobilitySystem& system);
ResourceTriple total_resources(const flow::FlowSolution& solution, const DesignPoint& point,
                               const MobilitySystem& system);
/// cost_2d = cost + price * CO2. Throws std::invalid_argument for price < 0.
Monetized monetize_2d(const ResourceTriple& r, double price_usd_per_kg);

/// What the routing LP depends on. Speeds of absent fleets are zero.
struct FlowKey {
  double v_av = 0.0;
  double n_v = 0.0;
  double v_mm = 0.0;
  double n_m = 0.0;
  double subway_level = 1.0;
  auto operator<=>(const FlowKey&) const = default;
};

FlowKey flow_key(const MobilitySystem& system, const DesignPoint& point);
std::string to_string(const FlowKey& key);

/// The routing problem of one design: AV arcs dropped when the fleet is
/// empty or too slow for the limit, MM arcs dropped without an MM fleet,
/// transit frequency scaled by the subway level.
flow::FlowProblem prepare_flow(const MobilitySystem& system, const FlowKey& key,
                               const network::DemandSet& demand);

/// Thread-safe memo of flow solutions by (key, demand rates).
class FlowCache {
 public:
  explicit FlowCache(const lp::LpSolver* solver = nullptr) : solver_(solver) {}
  std::shared_ptr<const flow::FlowSolution> get(const MobilitySystem& system,
                                                const FlowKey& key,
                                                const network::DemandSet& demand);
  std::size_t size() const;
  /// Called with the stage-1 LP of every solve performed through this cache.
  void set_lp_observer(std::function<void(const FlowKey&, const lp::LinearProgram&)> f) {
    observer_ = std::move(f);
  }

 private:
  using Key = std::pair<FlowKey, std::vector<double>>;
  const lp::LpSolver* solver_;
  mutable std::mutex mutex_;
  std::map<Key, std::shared_ptr<const flow::FlowSolution>> entries_;
  std::function<void(const FlowKey&, const lp::LinearProgram&)> observer_;
};

/// Requests of the system's demand, in file order, as coordinates.
codesign::Point demand_point(const MobilitySystem& system, const network::DemandSet& demand);
/// Inverse of demand_point; zero rates drop the request.
network::DemandSet demand_from_point(const MobilitySystem& system, const codesign::Point& f);

/// Node names inside the mobility diagram.
inline constexpr const char* kFlowNode = "intermodal";
inline constexpr const char* kAvNode = "av";
inline constexpr const char* kMmNode = "mm";
inline constexpr const char* kSubwayNode = "subway";
inline constexpr const char* kCostNode = "cost";
inline constexpr const char* kEmissionNode = "emissions";

/// Intermodal design problem: demand rates to the design variables it needs
/// (AV speed and fleet, MM speed and fleet, acquired trains) and what they
/// yield (average time, mileages, AV emissions). Evaluated on a finite
/// grid of demand points; query(f) answers with the union over grid points
/// covering f.
codesign::DesignProblem intermodal_problem(std::shared_ptr<const MobilitySystem> system,
                                           std::shared_ptr<FlowCache> cache,
                                           std::vector<network::DemandSet> demand_grid);

codesign::DesignProblem av_problem(const VehicleCatalog& catalog);
codesign::DesignProblem mm_problem(const VehicleCatalog& catalog);
codesign::DesignProblem subway_problem(const SubwayDesign& design,
                                       const std::vector<double>& levels);

/// Diagram with sinks (t_avg, C_tot, m_CO2_tot) and the demand as source.
/// The intermodal node's grid is the system demand unless one is given.
codesign::CoDesignDiagram build_mobility_cdpi(
    std::shared_ptr<const MobilitySystem> system, std::shared_ptr<FlowCache> cache,
    std::optional<std::vector<network::DemandSet>> demand_grid = std::nullopt);

/// Design variables recovered from a diagram record.
struct RecordDesign {
  std::string av_entry;
  double av_speed_mph = 0.0;
  double n_v_max = 0.0;
  std::string mm_entry;  // empty without MM
  double mm_speed_mph = 0.0;
  double n_m_max = 0.0;
  double subway_level = 1.0;
};

RecordDesign design_of(const codesign::CoDesignDiagram& diagram,
                       const codesign::ParetoRecord& record);

}  // namespace mobco::mobility
