#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mobco::network {

enum class Layer { Walk, RoadAV, RoadMM, Transit };
enum class ArcKind { Walk, RoadAV, RoadMM, Transit, ModeSwitch };

const char* to_string(Layer layer);
const char* to_string(ArcKind kind);
Layer parse_layer(const std::string& s);
ArcKind parse_arc_kind(const std::string& s);

struct Node {
  std::string id;
  Layer layer = Layer::Walk;
  double x = 0.0;
  double y = 0.0;
};

struct Arc {
  std::size_t tail = 0;
  std::size_t head = 0;
  ArcKind kind = ArcKind::Walk;
  double length_miles = 0.0;                          // not used by ModeSwitch
  std::optional<double> limit_av_mph;                 // RoadAV
  std::optional<double> limit_mm_mph;                 // RoadMM
  std::optional<double> capacity_vph;                 // RoadAV
  std::optional<double> baseline_vph;                 // RoadAV
  std::optional<double> transit_time_s;               // Transit
  std::optional<double> station_frequency_per_min;    // Walk -> Transit boarding

  // Filled by compute_travel_times.
  double travel_time_s = 0.0;
  double speed_mph = 0.0;  // road arcs only
};

/// Four-layer intermodal digraph. Node indices are stable; arcs refer to
/// nodes by index.
class Network {
 public:
  std::size_t add_node(Node node);
  std::size_t add_arc(Arc arc);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::vector<Arc>& arcs() { return arcs_; }
  const Node& node(std::size_t i) const { return nodes_.at(i); }
  std::optional<std::size_t> find(const std::string& id) const;
  /// Throws ConfigError when absent.
  std::size_t index_of(const std::string& id) const;

  std::size_t count_nodes(Layer layer) const;
  std::size_t count_arcs(ArcKind kind) const;

  /// Copy keeping only arcs for which keep(arc) is true; nodes unchanged.
  template <class Pred>
  Network with_arcs_if(Pred keep) const {
    Network out;
    out.nodes_ = nodes_;
    out.index_ = index_;
    for (const Arc& a : arcs_)
      if (keep(a)) out.arcs_.push_back(a);
    return out;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::map<std::string, std::size_t> index_;
};

struct NetworkParams {
  double walk_speed_mph = 3.1;
  double beta = 1.0 / 1.3;
  double t_ws_s = 60.0;  // walk -> station, before waiting
  double t_wv_s = 300.0;
  double t_vw_s = 60.0;
  double t_wm_s = 60.0;
  double t_mw_s = 60.0;
  double t_sw_s = 60.0;
  std::optional<double> phi_default_per_min;
  std::map<std::string, double> phi_by_station;  // station node id -> per minute
  double phi_scale = 1.0;                        // service-frequency multiplier
  std::optional<double> v_av_mph;                // achievable AV speed
  std::optional<double> v_mm_mph;                // achievable MM speed

  /// Throws ConfigError for negative times, beta outside (0,1] and the like.
  void validate() const;
};

/// Energy rates for vehicles traversing road arcs.
struct EnergyModel {
  /// 5 mph bucket lower bound -> kJ per mile. Bucket b covers [b, b+5).
  std::map<int, double> av_kj_per_mile;
  double mm_kj_per_mile = 0.0;
  double gamma_g_per_kj = 0.14;
  double train_emissions_kg_per_year = 140000.0;

  /// Flat 900 kJ/mile for 0-80 mph.
  static EnergyModel defaults();
  /// kJ per mile at the given AV speed. Throws ConfigError outside coverage.
  double av_rate(double speed_mph) const;
  void validate() const;
};

struct TravelRequest {
  std::size_t origin = 0;
  std::size_t destination = 0;
  double rate_per_hour = 0.0;
};

/// Finite set of travel requests, at most one per origin-destination pair.
struct DemandSet {
  std::vector<TravelRequest> requests;

  double total_rate() const;
  /// Rate of the (o, d) request, 0 if absent.
  double rate(std::size_t origin, std::size_t destination) const;
  /// Throws ConfigError for requests off the walk layer, o == d, rate <= 0,
  /// duplicate pairs or unknown nodes.
  void validate(const Network& net) const;
};

/// D1 <= D2 iff every request of D1 appears in D2 with at least its rate.
bool demand_leq(const DemandSet& d1, const DemandSet& d2);

/// Drops RoadAV arcs the vehicles cannot drive at least at beta times the
/// speed limit. Other arcs are kept.
Network filter_av_arcs(const Network& net, const NetworkParams& params);

/// Fills travel_time_s (and speed_mph on road arcs) for every arc. Throws
/// ConfigError on missing frequencies, speeds or lengths, and if any arc
/// ends up with a non-positive travel time.
Network compute_travel_times(const Network& net, const NetworkParams& params);

/// Energy to traverse a road arc once, in kJ. Uses the speed stored by
/// compute_travel_times. Throws ConfigError for non-road arcs or speeds
/// outside the table.
double arc_energy(const Arc& arc, const EnergyModel& model);

struct Diagnostic {
  enum class Kind { StrongConnectivity, ModeSwitchLayers, ArcLayers, Capacity,
                    MissingAttribute, BadValue };
  Kind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Diagnostic> failures;
  bool ok() const { return failures.empty(); }
  bool has(Diagnostic::Kind kind) const;
};

/// Structural checks: strong connectivity of the whole graph and of the walk
/// layer, legal layer pairs for every arc, baseline usage within capacity,
/// attributes required by each arc kind.
ValidationReport validate_network(const Network& net);

/// Loads the JSON graph format documented in docs/formats.md. Throws IoError
/// if unreadable, ConfigError on schema violations (including unknown fields).
Network load_network(const std::string& path);
Network parse_network(const std::string& text);
DemandSet load_demand(const std::string& path, const Network& net);
DemandSet parse_demand(const std::string& text, const Network& net);

}  // namespace mobco::network
