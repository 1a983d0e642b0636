#include <string>

#include "detail/json.hpp"
#include "mobco/errors.hpp"
#include "mobco/network.hpp"

namespace mobco::network {

using detail::json;

Network parse_network(const std::string& text) {
  const json doc = detail::parse_json(text, "graph file");
  detail::only_fields(doc, {"nodes", "arcs"}, "graph file");
  const json& nodes = detail::field(doc, "nodes", "graph file");
  const json& arcs = detail::field(doc, "arcs", "graph file");
  if (!nodes.is_array() || !arcs.is_array())
    throw ConfigError("graph file: 'nodes' and 'arcs' must be arrays");

  Network net;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "graph file: nodes[" + std::to_string(i) + "]";
    const json& n = nodes[i];
    detail::only_fields(n, {"id", "layer", "x", "y"}, where);
    Node node;
    node.id = detail::string(n, "id", where);
    node.layer = parse_layer(detail::string(n, "layer", where));
    node.x = detail::opt_number(n, "x", where).value_or(0.0);
    node.y = detail::opt_number(n, "y", where).value_or(0.0);
    net.add_node(std::move(node));
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string where = "graph file: arcs[" + std::to_string(i) + "]";
    const json& a = arcs[i];
    detail::only_fields(a,
                        {"tail", "head", "kind", "length_miles", "limit_av_mph",
                         "limit_mm_mph", "capacity_vph", "baseline_vph", "transit_time_s",
                         "station_frequency_per_min"},
                        where);
    Arc arc;
    arc.tail = net.index_of(detail::string(a, "tail", where));
    arc.head = net.index_of(detail::string(a, "head", where));
    arc.kind = parse_arc_kind(detail::string(a, "kind", where));
    const auto length = detail::opt_number(a, "length_miles", where);
    if (!length && (arc.kind == ArcKind::Walk || arc.kind == ArcKind::RoadAV ||
                    arc.kind == ArcKind::RoadMM))
      throw ConfigError(where + ": missing field 'length_miles'");
    arc.length_miles = length.value_or(0.0);
    arc.limit_av_mph = detail::opt_number(a, "limit_av_mph", where);
    arc.limit_mm_mph = detail::opt_number(a, "limit_mm_mph", where);
    arc.capacity_vph = detail::opt_number(a, "capacity_vph", where);
    arc.baseline_vph = detail::opt_number(a, "baseline_vph", where);
    arc.transit_time_s = detail::opt_number(a, "transit_time_s", where);
    arc.station_frequency_per_min = detail::opt_number(a, "station_frequency_per_min", where);
    net.add_arc(std::move(arc));
  }
  return net;
}

Network load_network(const std::string& path) {
  return parse_network(detail::read_file(path));
}

DemandSet parse_demand(const std::string& text, const Network& net) {
  const json doc = detail::parse_json(text, "demand file");
  detail::only_fields(doc, {"requests"}, "demand file");
  const json& reqs = detail::field(doc, "requests", "demand file");
  if (!reqs.is_array()) throw ConfigError("demand file: 'requests' must be an array");
  DemandSet demand;
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    const std::string where = "demand file: requests[" + std::to_string(i) + "]";
    const json& r = reqs[i];
    detail::only_fields(r, {"origin", "destination", "rate_per_hour"}, where);
    const std::string o = detail::string(r, "origin", where);
    const std::string d = detail::string(r, "destination", where);
    auto oi = net.find(o);
    auto di = net.find(d);
    if (!oi) throw ConfigError(where + ": unknown node '" + o + "'");
    if (!di) throw ConfigError(where + ": unknown node '" + d + "'");
    demand.requests.push_back({*oi, *di, detail::number(r, "rate_per_hour", where)});
  }
  demand.validate(net);
  return demand;
}

DemandSet load_demand(const std::string& path, const Network& net) {
  return parse_demand(detail::read_file(path), net);
}

}  // namespace mobco::network
