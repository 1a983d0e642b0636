#include "mobco/network.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "mobco/errors.hpp"

namespace mobco::network {

const char* to_string(Layer layer) {
  switch (layer) {
    case Layer::Walk: return "walk";
    case Layer::RoadAV: return "road_av";
    case Layer::RoadMM: return "road_mm";
    case Layer::Transit: return "transit";
  }
  return "?";
}

const char* to_string(ArcKind kind) {
  switch (kind) {
    case ArcKind::Walk: return "walk";
    case ArcKind::RoadAV: return "road_av";
    case ArcKind::RoadMM: return "road_mm";
    case ArcKind::Transit: return "transit";
    case ArcKind::ModeSwitch: return "switch";
  }
  return "?";
}

Layer parse_layer(const std::string& s) {
  if (s == "walk") return Layer::Walk;
  if (s == "road_av") return Layer::RoadAV;
  if (s == "road_mm") return Layer::RoadMM;
  if (s == "transit") return Layer::Transit;
  throw ConfigError("unknown layer '" + s + "'");
}

ArcKind parse_arc_kind(const std::string& s) {
  if (s == "walk") return ArcKind::Walk;
  if (s == "road_av") return ArcKind::RoadAV;
  if (s == "road_mm") return ArcKind::RoadMM;
  if (s == "transit") return ArcKind::Transit;
  if (s == "switch") return ArcKind::ModeSwitch;
  throw ConfigError("unknown arc kind '" + s + "'");
}

std::size_t Network::add_node(Node node) {
  if (node.id.empty()) throw ConfigError("node with empty id");
  if (index_.count(node.id)) throw ConfigError("duplicate node id '" + node.id + "'");
  index_.emplace(node.id, nodes_.size());
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

std::size_t Network::add_arc(Arc arc) {
  if (arc.tail >= nodes_.size() || arc.head >= nodes_.size())
    throw ConfigError("arc endpoint out of range");
  arcs_.push_back(std::move(arc));
  return arcs_.size() - 1;
}

std::optional<std::size_t> Network::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Network::index_of(const std::string& id) const {
  auto i = find(id);
  if (!i) throw ConfigError("unknown node '" + id + "'");
  return *i;
}

std::size_t Network::count_nodes(Layer layer) const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [&](const Node& n) { return n.layer == layer; }));
}

std::size_t Network::count_arcs(ArcKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      arcs_.begin(), arcs_.end(), [&](const Arc& a) { return a.kind == kind; }));
}

void NetworkParams::validate() const {
  auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0) || std::isinf(v))
      throw ConfigError(std::string(name) + " must be finite and >= 0");
  };
  if (!(walk_speed_mph > 0.0) || std::isinf(walk_speed_mph))
    throw ConfigError("walk speed must be > 0");
  if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("beta must lie in (0, 1]");
  nonneg(t_ws_s, "t_WS");
  nonneg(t_wv_s, "t_WV");
  nonneg(t_vw_s, "t_VW");
  nonneg(t_wm_s, "t_WM");
  nonneg(t_mw_s, "t_MW");
  nonneg(t_sw_s, "t_SW");
  if (!(phi_scale > 0.0)) throw ConfigError("frequency multiplier must be > 0");
  if (phi_default_per_min && !(*phi_default_per_min > 0.0))
    throw ConfigError("station frequency must be > 0");
  for (const auto& [id, phi] : phi_by_station)
    if (!(phi > 0.0)) throw ConfigError("frequency of station '" + id + "' must be > 0");
  if (v_av_mph && !(*v_av_mph > 0.0)) throw ConfigError("AV speed must be > 0");
  if (v_mm_mph && !(*v_mm_mph > 0.0)) throw ConfigError("MM speed must be > 0");
}

EnergyModel EnergyModel::defaults() {
  EnergyModel m;
  for (int b = 0; b < 80; b += 5) m.av_kj_per_mile[b] = 900.0;
  return m;
}

double EnergyModel::av_rate(double speed_mph) const {
  if (!(speed_mph >= 0.0))
    throw ConfigError("AV speed " + std::to_string(speed_mph) + " outside energy table");
  const int bucket = static_cast<int>(std::floor(speed_mph / 5.0)) * 5;
  auto it = av_kj_per_mile.find(bucket);
  if (it == av_kj_per_mile.end())
    throw ConfigError("AV speed " + std::to_string(speed_mph) +
                      " mph has no energy table bucket");
  return it->second;
}

void EnergyModel::validate() const {
  for (const auto& [b, v] : av_kj_per_mile) {
    if (b < 0 || b % 5 != 0) throw ConfigError("energy buckets must be multiples of 5 mph");
    if (!(v >= 0.0)) throw ConfigError("energy rates must be >= 0");
  }
  if (!(mm_kj_per_mile >= 0.0) || !(gamma_g_per_kj >= 0.0) ||
      !(train_emissions_kg_per_year >= 0.0))
    throw ConfigError("energy model entries must be >= 0");
}

double DemandSet::total_rate() const {
  double s = 0.0;
  for (const auto& r : requests) s += r.rate_per_hour;
  return s;
}

double DemandSet::rate(std::size_t origin, std::size_t destination) const {
  for (const auto& r : requests)
    if (r.origin == origin && r.destination == destination) return r.rate_per_hour;
  return 0.0;
}

void DemandSet::validate(const Network& net) const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& r : requests) {
    if (r.origin >= net.nodes().size() || r.destination >= net.nodes().size())
      throw ConfigError("request references a node outside the network");
    const Node& o = net.node(r.origin);
    const Node& d = net.node(r.destination);
    if (o.layer != Layer::Walk || d.layer != Layer::Walk)
      throw ConfigError("request " + o.id + " -> " + d.id + " must join walk nodes");
    if (r.origin == r.destination)
      throw ConfigError("request with identical origin and destination '" + o.id + "'");
    if (!(r.rate_per_hour > 0.0) || std::isinf(r.rate_per_hour))
      throw ConfigError("request " + o.id + " -> " + d.id + " needs a finite rate > 0");
    if (!seen.emplace(r.origin, r.destination).second)
      throw ConfigError("duplicate request " + o.id + " -> " + d.id);
  }
}

bool demand_leq(const DemandSet& d1, const DemandSet& d2) {
  for (const auto& r : d1.requests)
    if (d2.rate(r.origin, r.destination) < r.rate_per_hour) return false;
  return true;
}

Network filter_av_arcs(const Network& net, const NetworkParams& params) {
  const double v = params.v_av_mph.value_or(0.0);
  return net.with_arcs_if([&](const Arc& a) {
    if (a.kind != ArcKind::RoadAV) return true;
    if (!a.limit_av_mph) throw ConfigError("AV road arc without speed limit");
    return v >= params.beta * *a.limit_av_mph;
  });
}

namespace {

std::string arc_name(const Network& net, const Arc& a) {
  return net.node(a.tail).id + " -> " + net.node(a.head).id;
}

double switch_time(const Network& net, const Arc& a, const NetworkParams& p) {
  const Layer from = net.node(a.tail).layer;
  const Layer to = net.node(a.head).layer;
  if (from == Layer::Walk && to == Layer::Transit) {
    const std::string& station = net.node(a.head).id;
    std::optional<double> phi;
    if (auto it = p.phi_by_station.find(station); it != p.phi_by_station.end())
      phi = it->second;
    else if (a.station_frequency_per_min)
      phi = a.station_frequency_per_min;
    else
      phi = p.phi_default_per_min;
    if (!phi || !(*phi > 0.0))
      throw ConfigError("no service frequency for boarding arc " + arc_name(net, a));
    return p.t_ws_s + 60.0 / (2.0 * *phi * p.phi_scale);
  }
  if (from == Layer::Transit && to == Layer::Walk) return p.t_sw_s;
  if (from == Layer::Walk && to == Layer::RoadAV) return p.t_wv_s;
  if (from == Layer::RoadAV && to == Layer::Walk) return p.t_vw_s;
  if (from == Layer::Walk && to == Layer::RoadMM) return p.t_wm_s;
  if (from == Layer::RoadMM && to == Layer::Walk) return p.t_mw_s;
  throw ConfigError("illegal mode switch " + arc_name(net, a));
}

}  // namespace

Network compute_travel_times(const Network& net, const NetworkParams& params) {
  params.validate();
  Network out = net;
  for (Arc& a : out.arcs()) {
    switch (a.kind) {
      case ArcKind::Walk:
        a.travel_time_s = a.length_miles / params.walk_speed_mph * 3600.0;
        break;
      case ArcKind::RoadAV: {
        if (!params.v_av_mph) throw ConfigError("AV arcs present but no AV speed given");
        if (!a.limit_av_mph)
          throw ConfigError("AV road arc " + arc_name(net, a) + " without speed limit");
        a.speed_mph = std::min(*params.v_av_mph, *a.limit_av_mph);
        a.travel_time_s = a.length_miles / a.speed_mph * 3600.0;
        break;
      }
      case ArcKind::RoadMM: {
        if (!params.v_mm_mph) throw ConfigError("MM arcs present but no MM speed given");
        if (!a.limit_mm_mph)
          throw ConfigError("MM road arc " + arc_name(net, a) + " without speed limit");
        a.speed_mph = std::min(*params.v_mm_mph, *a.limit_mm_mph);
        a.travel_time_s = a.length_miles / a.speed_mph * 3600.0;
        break;
      }
      case ArcKind::Transit:
        if (!a.transit_time_s)
          throw ConfigError("transit arc " + arc_name(net, a) + " without schedule time");
        a.travel_time_s = *a.transit_time_s;
        break;
      case ArcKind::ModeSwitch:
        a.travel_time_s = switch_time(net, a, params);
        break;
    }
    if (!(a.travel_time_s > 0.0) || std::isinf(a.travel_time_s))
      throw ConfigError("arc " + arc_name(net, a) + " has non-positive travel time");
  }
  return out;
}

double arc_energy(const Arc& arc, const EnergyModel& model) {
  if (arc.kind == ArcKind::RoadAV) return model.av_rate(arc.speed_mph) * arc.length_miles;
  if (arc.kind == ArcKind::RoadMM) return model.mm_kj_per_mile * arc.length_miles;
  throw ConfigError(std::string("arc energy is defined for road arcs only, got ") +
                    to_string(arc.kind));
}

bool ValidationReport::has(Diagnostic::Kind kind) const {
  return std::any_of(failures.begin(), failures.end(),
                     [&](const Diagnostic& d) { return d.kind == kind; });
}

namespace {

// Nodes reachable from start along arcs accepted by use, forwards or backwards.
std::vector<char> reach(const Network& net, std::size_t start, bool forward,
                        const std::function<bool(const Arc&)>& use) {
  std::vector<std::vector<std::size_t>> adj(net.nodes().size());
  for (const Arc& a : net.arcs())
    if (use(a)) adj[forward ? a.tail : a.head].push_back(forward ? a.head : a.tail);
  std::vector<char> seen(net.nodes().size(), 0);
  std::vector<std::size_t> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

// Ids of nodes in `members` not mutually reachable with the first member.
std::vector<std::string> strongly_disconnected(const Network& net,
                                               const std::vector<std::size_t>& members,
                                               const std::function<bool(const Arc&)>& use) {
  std::vector<std::string> bad;
  if (members.empty()) return bad;
  const auto fwd = reach(net, members.front(), true, use);
  const auto bwd = reach(net, members.front(), false, use);
  for (std::size_t v : members)
    if (!fwd[v] || !bwd[v]) bad.push_back(net.node(v).id);
  return bad;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ids.size() && i < 8; ++i) os << (i ? ", " : "") << ids[i];
  if (ids.size() > 8) os << ", ...";
  return os.str();
}

bool layers_legal(ArcKind kind, Layer from, Layer to) {
  switch (kind) {
    case ArcKind::Walk: return from == Layer::Walk && to == Layer::Walk;
    case ArcKind::RoadAV: return from == Layer::RoadAV && to == Layer::RoadAV;
    case ArcKind::RoadMM: return from == Layer::RoadMM && to == Layer::RoadMM;
    case ArcKind::Transit: return from == Layer::Transit && to == Layer::Transit;
    case ArcKind::ModeSwitch:
      return (from == Layer::Walk) != (to == Layer::Walk) &&
             (from == Layer::Walk || to == Layer::Walk);
  }
  return false;
}

}  // namespace

ValidationReport validate_network(const Network& net) {
  using K = Diagnostic::Kind;
  ValidationReport report;
  auto fail = [&](K kind, std::string msg) {
    report.failures.push_back({kind, std::move(msg)});
  };

  for (const Arc& a : net.arcs()) {
    const Layer from = net.node(a.tail).layer;
    const Layer to = net.node(a.head).layer;
    const std::string name = arc_name(net, a);
    if (!layers_legal(a.kind, from, to)) {
      fail(a.kind == ArcKind::ModeSwitch ? K::ModeSwitchLayers : K::ArcLayers,
           std::string(to_string(a.kind)) + " arc " + name + " joins layers " +
               to_string(from) + " and " + to_string(to));
      continue;
    }
    if (a.tail == a.head) fail(K::ArcLayers, "self loop at " + net.node(a.tail).id);
    if (a.kind != ArcKind::ModeSwitch && a.kind != ArcKind::Transit &&
        (!(a.length_miles >= 0.0) || std::isinf(a.length_miles)))
      fail(K::BadValue, "arc " + name + " has an invalid length");
    switch (a.kind) {
      case ArcKind::RoadAV:
        if (!a.limit_av_mph || !a.capacity_vph || !a.baseline_vph) {
          fail(K::MissingAttribute,
               "AV road arc " + name + " needs limit_av_mph, capacity_vph, baseline_vph");
          break;
        }
        if (!(*a.limit_av_mph > 0.0)) fail(K::BadValue, "arc " + name + " speed limit <= 0");
        if (*a.capacity_vph < 0.0 || *a.baseline_vph < 0.0)
          fail(K::BadValue, "arc " + name + " has negative capacity or baseline");
        if (*a.baseline_vph > *a.capacity_vph)
          fail(K::Capacity, "arc " + name + ": baseline usage " +
                                std::to_string(*a.baseline_vph) + " exceeds capacity " +
                                std::to_string(*a.capacity_vph));
        break;
      case ArcKind::RoadMM:
        if (!a.limit_mm_mph)
          fail(K::MissingAttribute, "MM road arc " + name + " needs limit_mm_mph");
        else if (!(*a.limit_mm_mph > 0.0))
          fail(K::BadValue, "arc " + name + " speed limit <= 0");
        break;
      case ArcKind::Transit:
        if (!a.transit_time_s)
          fail(K::MissingAttribute, "transit arc " + name + " needs transit_time_s");
        else if (!(*a.transit_time_s > 0.0))
          fail(K::BadValue, "transit arc " + name + " time <= 0");
        break;
      default:
        break;
    }
  }

  std::vector<std::size_t> all(net.nodes().size()), walk;
  for (std::size_t i = 0; i < all.size(); ++i) {
    all[i] = i;
    if (net.node(i).layer == Layer::Walk) walk.push_back(i);
  }
  auto any = [](const Arc&) { return true; };
  if (auto bad = strongly_disconnected(net, all, any); !bad.empty())
    fail(K::StrongConnectivity,
         "graph is not strongly connected; unreachable both ways from " +
             net.node(0).id + ": " + join_ids(bad));
  auto walk_only = [](const Arc& a) { return a.kind == ArcKind::Walk; };
  if (auto bad = strongly_disconnected(net, walk, walk_only); !bad.empty())
    fail(K::StrongConnectivity,
         "walk layer is not strongly connected; cut off from " + net.node(walk.front()).id +
             ": " + join_ids(bad));
  return report;
}

}  // namespace mobco::network
