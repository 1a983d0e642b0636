#include "mobco/mobility.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <stdexcept>

#include "mobco/errors.hpp"

namespace mobco::mobility {

using codesign::Choice;
using codesign::DesignProblem;
using codesign::Implementation;
using codesign::Port;
using codesign::Step;
using poset::AxisKind;
using poset::ExtNonNeg;
using poset::Point;
using poset::Space;

namespace {

std::string shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

bool integral(double v) { return v >= 0.0 && std::floor(v) == v && std::isfinite(v); }

}  // namespace

void VehicleCatalog::validate() const {
  if (entries.empty()) throw ConfigError("catalog '" + name + "' is empty");
  std::set<std::string> ids;
  for (const VehicleEntry& e : entries) {
    const std::string where = "catalog '" + name + "', entry '" + e.id + "'";
    if (e.id.empty()) throw ConfigError("catalog '" + name + "' has an entry without id");
    if (!ids.insert(e.id).second) throw ConfigError(where + ": duplicate id");
    if (!(e.speed_mph > 0.0) || !std::isfinite(e.speed_mph))
      throw ConfigError(where + ": speed must be > 0");
    if (!(e.fixed_cost_usd > 0.0) || !std::isfinite(e.fixed_cost_usd))
      throw ConfigError(where + ": fixed cost must be > 0");
    if (!(e.op_cost_usd_per_mile > 0.0) || !std::isfinite(e.op_cost_usd_per_mile))
      throw ConfigError(where + ": operating cost must be > 0");
    if (!(e.life_years > 0.0) || !std::isfinite(e.life_years))
      throw ConfigError(where + ": life must be > 0");
    if (!(e.emissions_kg_per_mile >= 0.0) || !std::isfinite(e.emissions_kg_per_mile))
      throw ConfigError(where + ": emissions must be >= 0");
  }
}

double SubwayDesign::op_cost_per_year(double level) const {
  auto it = op_cost_usd_per_year_by_level.find(level);
  if (it == op_cost_usd_per_year_by_level.end())
    throw ConfigError("subway level " + shortest(level) + " has no operating cost");
  return it->second;
}

void SubwayDesign::validate() const {
  if (!integral(baseline_trains) || baseline_trains <= 0.0)
    throw ConfigError("subway baseline fleet must be a positive integer");
  if (!(fixed_cost_usd_per_train > 0.0)) throw ConfigError("train cost must be > 0");
  if (!(life_years > 0.0)) throw ConfigError("train life must be > 0");
  if (!(baseline_frequency_per_min > 0.0)) throw ConfigError("subway frequency must be > 0");
  if (op_cost_usd_per_year_by_level.empty()) throw ConfigError("subway op-cost table is empty");
  for (const auto& [level, cost] : op_cost_usd_per_year_by_level) {
    if (!(level >= 1.0)) throw ConfigError("subway levels must be >= 1");
    if (!integral(acquired_trains(level)))
      throw ConfigError("subway level " + shortest(level) + " gives a fractional train count");
    if (!(cost >= 0.0)) throw ConfigError("subway operating cost must be >= 0");
  }
}

double subway_cost(const SubwayDesign& d, double level) {
  const double op = d.op_cost_per_year(level);
  return d.fixed_cost_usd_per_train / d.life_years * d.acquired_trains(level) / 12.0 + op / 12.0;
}

double av_fleet_cost(double fixed_cost_usd, double life_years, double op_cost_usd_per_mile,
                     double fleet, double miles_per_hour, double hours_per_month) {
  return fixed_cost_usd / (life_years * 12.0) * fleet +
         op_cost_usd_per_mile * miles_per_hour * hours_per_month;
}

double mm_amortized_cost(double fixed_cost_usd, double life_years) {
  return fixed_cost_usd / (life_years * 12.0);
}

double mm_fleet_cost(double amortized_usd_per_month, double op_cost_usd_per_mile, double fleet,
                     double miles_per_hour, double hours_per_month) {
  return amortized_usd_per_month * fleet + op_cost_usd_per_mile * miles_per_hour * hours_per_month;
}

double total_cost(double c_v, double c_m, double c_s) { return c_v + c_m + c_s; }

double total_emissions(double av_kg_per_hour, double mm_kg_per_mile, double mm_miles_per_hour,
                       double hours_per_month, double train_kg_per_year, double trains) {
  return (av_kg_per_hour + mm_kg_per_mile * mm_miles_per_hour) * hours_per_month +
         train_kg_per_year * trains / 12.0;
}

double MobilitySystem::av_life_years() const {
  if (av.entries.empty()) throw ConfigError("AV catalog is empty");
  return av.entries.front().life_years;
}

void MobilitySystem::validate() const {
  params.validate();
  energy.validate();
  av.validate();
  const double life = av_life_years();
  for (const VehicleEntry& e : av.entries)
    if (e.life_years != life)
      throw ConfigError("AV catalog '" + av.name + "' mixes vehicle lives");
  if (mm) mm->validate();
  subway.validate();
  if (!(hours_per_month > 0.0)) throw ConfigError("hours per month must be > 0");
  if (!(train_emissions_kg_per_year >= 0.0)) throw ConfigError("train emissions must be >= 0");

  auto check_fleets = [](const std::vector<double>& v, const char* what) {
    if (v.empty()) throw ConfigError(std::string(what) + " grid is empty");
    std::set<double> seen;
    for (double x : v) {
      if (!integral(x)) throw ConfigError(std::string(what) + " sizes must be integers >= 0");
      if (!seen.insert(x).second) throw ConfigError(std::string(what) + " grid has duplicates");
    }
  };
  check_fleets(grid.av_fleets, "AV fleet");
  if (mm) check_fleets(grid.mm_fleets, "MM fleet");
  else if (!grid.mm_fleets.empty())
    throw ConfigError("MM fleet grid given without an MM catalog");
  if (grid.subway_levels.empty()) throw ConfigError("subway level grid is empty");
  std::set<double> levels;
  for (double l : grid.subway_levels) {
    subway.op_cost_per_year(l);
    if (!levels.insert(l).second) throw ConfigError("subway level grid has duplicates");
  }
  demand.validate(network);
  if (demand.requests.empty()) throw ConfigError("demand has no requests");
}

std::vector<DesignPoint> MobilitySystem::design_points() const {
  std::vector<DesignPoint> out;
  for (std::size_t e = 0; e < av.entries.size(); ++e)
    for (double nv : grid.av_fleets) {
      auto push_levels = [&](std::optional<std::size_t> me, double nm) {
        for (double level : grid.subway_levels) out.push_back({e, nv, me, nm, level});
      };
      if (!mm) {
        push_levels(std::nullopt, 0.0);
        continue;
      }
      for (std::size_t m = 0; m < mm->entries.size(); ++m)
        for (double nm : grid.mm_fleets) push_levels(m, nm);
    }
  return out;
}

FleetCosts fleet_costs(const flow::FlowSolution& s, const DesignPoint& p,
                       const MobilitySystem& sys) {
  FleetCosts c;
  const VehicleEntry& av = sys.av.entries.at(p.av_entry);
  c.c_v = av_fleet_cost(av.fixed_cost_usd, sys.av_life_years(), av.op_cost_usd_per_mile,
                        p.n_v_max, s.s_v_tot, sys.hours_per_month);
  if (sys.mm && p.mm_entry) {
    const VehicleEntry& mm = sys.mm->entries.at(*p.mm_entry);
    c.c_m = mm_fleet_cost(mm_amortized_cost(mm.fixed_cost_usd, mm.life_years),
                          mm.op_cost_usd_per_mile, p.n_m_max, s.s_m_tot, sys.hours_per_month);
  }
  return c;
}

ResourceTriple total_resources(const flow::FlowSolution& s, const DesignPoint& p,
                               const MobilitySystem& sys) {
  const FleetCosts fc = fleet_costs(s, p, sys);
  double mm_kg = 0.0, mm_miles = 0.0;
  if (sys.mm && p.mm_entry) {
    mm_kg = sys.mm->entries.at(*p.mm_entry).emissions_kg_per_mile;
    mm_miles = s.s_m_tot;
  }
  ResourceTriple r;
  r.t_avg_s = s.t_avg_s;
  r.cost_usd_per_month = total_cost(fc.c_v, fc.c_m, subway_cost(sys.subway, p.subway_level));
  r.co2_kg_per_month =
      total_emissions(s.m_co2_v, mm_kg, mm_miles, sys.hours_per_month,
                      sys.train_emissions_kg_per_year, sys.subway.total_trains(p.subway_level));
  return r;
}

Monetized monetize_2d(const ResourceTriple& r, double price) {
  if (!(price >= 0.0) || !std::isfinite(price))
    throw std::invalid_argument("emission price must be finite and >= 0");
  return {r.t_avg_s, r.cost_usd_per_month + price * r.co2_kg_per_month};
}

FlowKey flow_key(const MobilitySystem& sys, const DesignPoint& p) {
  FlowKey k;
  k.n_v = p.n_v_max;
  if (p.n_v_max > 0.0) k.v_av = sys.av.entries.at(p.av_entry).speed_mph;
  if (sys.mm && p.mm_entry) {
    k.n_m = p.n_m_max;
    if (p.n_m_max > 0.0) k.v_mm = sys.mm->entries.at(*p.mm_entry).speed_mph;
  }
  k.subway_level = p.subway_level;
  return k;
}

std::string to_string(const FlowKey& k) {
  return "av" + shortest(k.v_av) + "x" + shortest(k.n_v) + "/mm" + shortest(k.v_mm) + "x" +
         shortest(k.n_m) + "/subway" + shortest(k.subway_level);
}

flow::FlowProblem prepare_flow(const MobilitySystem& sys, const FlowKey& key,
                               const network::DemandSet& demand) {
  using network::ArcKind;
  network::NetworkParams params = sys.params;
  params.phi_scale = key.subway_level;
  if (!params.phi_default_per_min) params.phi_default_per_min = sys.subway.baseline_frequency_per_min;
  params.v_av_mph.reset();
  params.v_mm_mph.reset();
  if (key.n_v > 0.0) params.v_av_mph = key.v_av;
  if (key.n_m > 0.0) params.v_mm_mph = key.v_mm;

  network::Network net = sys.network.with_arcs_if([&](const network::Arc& a) {
    if (a.kind == ArcKind::RoadAV) return key.n_v > 0.0;
    if (a.kind == ArcKind::RoadMM) return key.n_m > 0.0;
    return true;
  });
  if (key.n_v > 0.0) net = network::filter_av_arcs(net, params);

  flow::FlowProblem p;
  p.network = network::compute_travel_times(net, params);
  p.demand = demand;
  p.n_v_max = key.n_v;
  p.n_m_max = key.n_m;
  p.energy = sys.energy;
  return p;
}

std::shared_ptr<const flow::FlowSolution> FlowCache::get(const MobilitySystem& sys,
                                                         const FlowKey& key,
                                                         const network::DemandSet& demand) {
  Key k{key, {}};
  k.second.reserve(demand.requests.size() * 3);
  for (const auto& r : demand.requests) {
    k.second.push_back(static_cast<double>(r.origin));
    k.second.push_back(static_cast<double>(r.destination));
    k.second.push_back(r.rate_per_hour);
  }
  {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(k);
    if (it != entries_.end()) return it->second;
  }
  auto solution = std::make_shared<flow::FlowSolution>();
  if (demand.requests.empty()) {
    solution->status = flow::FlowStatus::Optimal;
  } else {
    const flow::FlowProblem problem = prepare_flow(sys, key, demand);
    if (observer_) observer_(key, flow::build_lp(problem));
    *solution = flow::solve_flow(problem, solver_);
  }
  std::lock_guard lock(mutex_);
  return entries_.emplace(std::move(k), std::move(solution)).first->second;
}

std::size_t FlowCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

Point demand_point(const MobilitySystem& sys, const network::DemandSet& demand) {
  for (const auto& r : demand.requests)
    if (sys.demand.rate(r.origin, r.destination) == 0.0 &&
        std::none_of(sys.demand.requests.begin(), sys.demand.requests.end(),
                     [&](const network::TravelRequest& q) {
                       return q.origin == r.origin && q.destination == r.destination;
                     }))
      throw ConfigError("demand has a request outside the system's origin-destination list");
  std::vector<double> c;
  c.reserve(sys.demand.requests.size());
  for (const auto& r : sys.demand.requests) c.push_back(demand.rate(r.origin, r.destination));
  return Point::of(c);
}

network::DemandSet demand_from_point(const MobilitySystem& sys, const Point& f) {
  if (f.dim() != sys.demand.requests.size()) throw DimensionError("demand point arity mismatch");
  network::DemandSet d;
  for (std::size_t i = 0; i < f.dim(); ++i) {
    if (f[i].is_top()) throw ConfigError("unbounded demand rate");
    if (f[i].value() > 0.0)
      d.requests.push_back(
          {sys.demand.requests[i].origin, sys.demand.requests[i].destination, f[i].value()});
  }
  return d;
}

namespace {

constexpr const char* kUsd = "usd";
constexpr const char* kUsdPerMonth = "usd/month";
constexpr const char* kUsdPerMile = "usd/mi";
constexpr const char* kMph = "mph";
constexpr const char* kVehicles = "vehicles";
constexpr const char* kTrains = "trains";
constexpr const char* kMilesPerHour = "mi/h";
constexpr const char* kKgPerHour = "kg/h";
constexpr const char* kKgPerMile = "kg/mi";
constexpr const char* kKgPerMonth = "kg/month";
constexpr const char* kSeconds = "s";

Space demand_space(const MobilitySystem& sys) {
  std::vector<poset::Axis> axes;
  for (std::size_t i = 0; i < sys.demand.requests.size(); ++i) {
    const auto& r = sys.demand.requests[i];
    axes.push_back({"rate_" + sys.network.node(r.origin).id + "_" +
                        sys.network.node(r.destination).id,
                    "customers/h", AxisKind::Real});
  }
  return Space(std::move(axes));
}

Space intermodal_resources(bool with_mm) {
  std::vector<poset::Axis> axes{{"v_av", kMph, AxisKind::Real},
                                {"n_v", kVehicles, AxisKind::Natural}};
  if (with_mm) {
    axes.push_back({"v_mm", kMph, AxisKind::Real});
    axes.push_back({"n_m", kVehicles, AxisKind::Natural});
  }
  axes.push_back({"n_sa", kTrains, AxisKind::Natural});
  axes.push_back({"t_avg", kSeconds, AxisKind::Real});
  axes.push_back({"s_v", kMilesPerHour, AxisKind::Real});
  if (with_mm) axes.push_back({"s_m", kMilesPerHour, AxisKind::Real});
  axes.push_back({"m_v", kKgPerHour, AxisKind::Real});
  return Space(std::move(axes));
}

std::vector<FlowKey> flow_keys(const MobilitySystem& sys) {
  std::set<FlowKey> keys;
  for (const DesignPoint& p : sys.design_points()) keys.insert(flow_key(sys, p));
  return {keys.begin(), keys.end()};
}

// Any top coordinate makes the aggregate top.
bool any_top(const Point& f) {
  for (std::size_t i = 0; i < f.dim(); ++i)
    if (f[i].is_top()) return true;
  return false;
}

}  // namespace

DesignProblem intermodal_problem(std::shared_ptr<const MobilitySystem> sys,
                                 std::shared_ptr<FlowCache> cache,
                                 std::vector<network::DemandSet> demand_grid) {
  const bool with_mm = sys->mm.has_value();
  std::vector<Point> grid;
  for (const auto& d : demand_grid) grid.push_back(demand_point(*sys, d));
  auto keys = std::make_shared<const std::vector<FlowKey>>(flow_keys(*sys));

  DesignProblem::Hook hook = [sys, cache, keys, with_mm](const Point& g) {
    const network::DemandSet demand = demand_from_point(*sys, g);
    std::vector<Choice> out;
    for (const FlowKey& k : *keys) {
      auto s = cache->get(*sys, k, demand);
      if (s->status != flow::FlowStatus::Optimal) continue;
      std::vector<double> r{k.v_av, k.n_v};
      if (with_mm) {
        r.push_back(k.v_mm);
        r.push_back(k.n_m);
      }
      r.push_back(sys->subway.acquired_trains(k.subway_level));
      r.push_back(s->t_avg_s);
      r.push_back(s->s_v_tot);
      if (with_mm) r.push_back(s->s_m_tot);
      r.push_back(s->m_co2_v);
      codesign::Attributes attrs{{"v_av_mph", shortest(k.v_av)},
                                 {"n_v_max", shortest(k.n_v)},
                                 {"v_mm_mph", shortest(k.v_mm)},
                                 {"n_m_max", shortest(k.n_m)},
                                 {"subway_level", shortest(k.subway_level)}};
      out.push_back({Point::of(r), {Step{kFlowNode, to_string(k), std::move(attrs)}}, {}});
    }
    return out;
  };
  return DesignProblem::computed(kFlowNode, demand_space(*sys), intermodal_resources(with_mm),
                                 std::move(hook), std::move(grid));
}

DesignProblem av_problem(const VehicleCatalog& catalog) {
  std::vector<Implementation> impls;
  for (const VehicleEntry& e : catalog.entries) {
    codesign::Attributes attrs = e.attributes;
    attrs["speed_mph"] = shortest(e.speed_mph);
    impls.push_back({e.id, Point{e.speed_mph}, Point{e.fixed_cost_usd, e.op_cost_usd_per_mile},
                     std::move(attrs)});
  }
  return DesignProblem::catalog(kAvNode, Space({{"speed", kMph, AxisKind::Real}}),
                                Space({{"fixed_cost", kUsd, AxisKind::Real},
                                       {"op_cost", kUsdPerMile, AxisKind::Real}}),
                                std::move(impls));
}

DesignProblem mm_problem(const VehicleCatalog& catalog) {
  std::vector<Implementation> impls;
  for (const VehicleEntry& e : catalog.entries) {
    codesign::Attributes attrs = e.attributes;
    attrs["speed_mph"] = shortest(e.speed_mph);
    impls.push_back({e.id, Point{e.speed_mph},
                     Point{mm_amortized_cost(e.fixed_cost_usd, e.life_years),
                           e.op_cost_usd_per_mile, e.emissions_kg_per_mile},
                     std::move(attrs)});
  }
  return DesignProblem::catalog(kMmNode, Space({{"speed", kMph, AxisKind::Real}}),
                                Space({{"amortized_cost", kUsdPerMonth, AxisKind::Real},
                                       {"op_cost", kUsdPerMile, AxisKind::Real},
                                       {"emissions", kKgPerMile, AxisKind::Real}}),
                                std::move(impls));
}

DesignProblem subway_problem(const SubwayDesign& design, const std::vector<double>& levels) {
  std::vector<Implementation> impls;
  for (double level : levels)
    impls.push_back({"level-" + shortest(level), Point{design.acquired_trains(level)},
                     Point{subway_cost(design, level), design.total_trains(level)},
                     {{"subway_level", shortest(level)}}});
  return DesignProblem::catalog(kSubwayNode, Space({{"n_sa", kTrains, AxisKind::Natural}}),
                                Space({{"cost", kUsdPerMonth, AxisKind::Real},
                                       {"n_s", kTrains, AxisKind::Natural}}),
                                std::move(impls));
}

codesign::CoDesignDiagram build_mobility_cdpi(
    std::shared_ptr<const MobilitySystem> sys, std::shared_ptr<FlowCache> cache,
    std::optional<std::vector<network::DemandSet>> demand_grid) {
  const bool with_mm = sys->mm.has_value();
  const double life = sys->av_life_years();
  const double hours = sys->hours_per_month;
  const double train_kg = sys->train_emissions_kg_per_year;

  std::vector<poset::Axis> cost_axes{{"av_fixed", kUsd, AxisKind::Real},
                                     {"av_op", kUsdPerMile, AxisKind::Real},
                                     {"n_v", kVehicles, AxisKind::Natural},
                                     {"s_v", kMilesPerHour, AxisKind::Real}};
  if (with_mm) {
    cost_axes.push_back({"mm_amortized", kUsdPerMonth, AxisKind::Real});
    cost_axes.push_back({"mm_op", kUsdPerMile, AxisKind::Real});
    cost_axes.push_back({"n_m", kVehicles, AxisKind::Natural});
    cost_axes.push_back({"s_m", kMilesPerHour, AxisKind::Real});
  }
  cost_axes.push_back({"c_s", kUsdPerMonth, AxisKind::Real});
  DesignProblem::Hook cost_hook = [with_mm, life, hours](const Point& f) {
    if (any_top(f)) return std::vector<Choice>{{Point(std::vector{ExtNonNeg::top()}), {}, {}}};
    std::size_t i = 0;
    auto next = [&] { return f[i++].value(); };
    const double av_fixed = next(), av_op = next(), n_v = next(), s_v = next();
    double c_m = 0.0;
    if (with_mm) {
      const double amort = next(), op = next(), n_m = next(), s_m = next();
      c_m = mm_fleet_cost(amort, op, n_m, s_m, hours);
    }
    const double c_s = next();
    const double c_v = av_fleet_cost(av_fixed, life, av_op, n_v, s_v, hours);
    const double total = total_cost(c_v, c_m, c_s);
    return std::vector<Choice>{{Point{total}, {Step{kCostNode, "sum", {}}}, {}}};
  };

  std::vector<poset::Axis> em_axes{{"m_v", kKgPerHour, AxisKind::Real}};
  if (with_mm) {
    em_axes.push_back({"mm_emissions", kKgPerMile, AxisKind::Real});
    em_axes.push_back({"s_m", kMilesPerHour, AxisKind::Real});
  }
  em_axes.push_back({"n_s", kTrains, AxisKind::Natural});
  DesignProblem::Hook em_hook = [with_mm, hours, train_kg](const Point& f) {
    if (any_top(f)) return std::vector<Choice>{{Point(std::vector{ExtNonNeg::top()}), {}, {}}};
    std::size_t i = 0;
    auto next = [&] { return f[i++].value(); };
    const double m_v = next();
    double mm_kg = 0.0, s_m = 0.0;
    if (with_mm) {
      mm_kg = next();
      s_m = next();
    }
    const double n_s = next();
    const double total = total_emissions(m_v, mm_kg, s_m, hours, train_kg, n_s);
    return std::vector<Choice>{{Point{total}, {Step{kEmissionNode, "sum", {}}}, {}}};
  };

  codesign::DiagramBuilder b;
  b.add(intermodal_problem(sys, cache, demand_grid.value_or(std::vector{sys->demand})));
  b.add(av_problem(sys->av));
  if (with_mm) b.add(mm_problem(*sys->mm));
  b.add(subway_problem(sys->subway, sys->grid.subway_levels));
  b.add(DesignProblem::computed(kCostNode, Space(cost_axes),
                                Space({{"total", kUsdPerMonth, AxisKind::Real}}),
                                std::move(cost_hook)));
  b.add(DesignProblem::computed(kEmissionNode, Space(em_axes),
                                Space({{"total", kKgPerMonth, AxisKind::Real}}),
                                std::move(em_hook)));

  for (std::size_t i = 0; i < sys->demand.requests.size(); ++i) {
    const auto& r = sys->demand.requests[i];
    b.source({kFlowNode, "rate_" + sys->network.node(r.origin).id + "_" +
                             sys->network.node(r.destination).id});
  }
  b.connect({kFlowNode, "v_av"}, {kAvNode, "speed"});
  b.connect({kFlowNode, "n_sa"}, {kSubwayNode, "n_sa"});
  b.connect({kAvNode, "fixed_cost"}, {kCostNode, "av_fixed"});
  b.connect({kAvNode, "op_cost"}, {kCostNode, "av_op"});
  b.connect({kFlowNode, "n_v"}, {kCostNode, "n_v"});
  b.connect({kFlowNode, "s_v"}, {kCostNode, "s_v"});
  b.connect({kSubwayNode, "cost"}, {kCostNode, "c_s"});
  b.connect({kFlowNode, "m_v"}, {kEmissionNode, "m_v"});
  b.connect({kSubwayNode, "n_s"}, {kEmissionNode, "n_s"});
  if (with_mm) {
    b.connect({kFlowNode, "v_mm"}, {kMmNode, "speed"});
    b.connect({kMmNode, "amortized_cost"}, {kCostNode, "mm_amortized"});
    b.connect({kMmNode, "op_cost"}, {kCostNode, "mm_op"});
    b.connect({kFlowNode, "n_m"}, {kCostNode, "n_m"});
    b.connect({kFlowNode, "s_m"}, {kCostNode, "s_m"});
    b.connect({kMmNode, "emissions"}, {kEmissionNode, "mm_emissions"});
    b.connect({kFlowNode, "s_m"}, {kEmissionNode, "s_m"});
  }
  b.sink({kFlowNode, "t_avg"});
  b.sink({kCostNode, "total"});
  b.sink({kEmissionNode, "total"});
  return b.build();
}

RecordDesign design_of(const codesign::CoDesignDiagram& diagram,
                       const codesign::ParetoRecord& record) {
  RecordDesign d;
  auto step_of = [&](const char* node) -> const Step* {
    std::size_t k = 0;
    try {
      k = diagram.node_index(node);
    } catch (const std::out_of_range&) {
      return nullptr;
    }
    const auto& prov = record.per_node.at(k);
    return prov.empty() ? nullptr : &prov.front();
  };
  if (const Step* s = step_of(kFlowNode)) {
    d.av_speed_mph = parse_double(s->attributes.at("v_av_mph"));
    d.n_v_max = parse_double(s->attributes.at("n_v_max"));
    d.mm_speed_mph = parse_double(s->attributes.at("v_mm_mph"));
    d.n_m_max = parse_double(s->attributes.at("n_m_max"));
    d.subway_level = parse_double(s->attributes.at("subway_level"));
  }
  if (const Step* s = step_of(kAvNode)) d.av_entry = s->implementation;
  if (const Step* s = step_of(kMmNode)) d.mm_entry = s->implementation;
  return d;
}

}  // namespace mobco::mobility
