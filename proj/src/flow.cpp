#include "mobco/flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mobco/errors.hpp"

namespace mobco::flow {

using network::ArcKind;
using network::Layer;

namespace {

constexpr double kStageTwoSlack = 1e-10;

bool is_road(ArcKind k) { return k == ArcKind::RoadAV || k == ArcKind::RoadMM; }

// Rounds to a 32-bit mantissa so that equal optima reached through different
// pivot sequences report identical values.
double canonical(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  const int e = std::ilogb(v) - 31;
  return std::ldexp(std::nearbyint(std::ldexp(v, -e)), e);
}

void check_problem(const FlowProblem& p) {
  const auto& net = p.network;
  if (p.demand.requests.empty()) throw BuildError("flow problem without requests");
  if (!(p.n_v_max >= 0.0) || !(p.n_m_max >= 0.0) || std::isinf(p.n_v_max) ||
      std::isinf(p.n_m_max))
    throw BuildError("fleet bounds must be finite and >= 0");
  for (const auto& r : p.demand.requests) {
    if (r.origin >= net.nodes().size() || r.destination >= net.nodes().size())
      throw BuildError("request references a node outside the network");
    if (net.node(r.origin).layer != Layer::Walk || net.node(r.destination).layer != Layer::Walk)
      throw BuildError("request " + net.node(r.origin).id + " -> " +
                       net.node(r.destination).id + " does not join walk nodes");
    if (!(r.rate_per_hour > 0.0)) throw BuildError("request rate must be > 0");
  }
  for (const auto& a : net.arcs())
    if (!(a.travel_time_s > 0.0))
      throw BuildError("arc " + net.node(a.tail).id + " -> " + net.node(a.head).id +
                       " has no travel time");
}

}  // namespace

FlowLayout layout_of(const FlowProblem& problem) {
  FlowLayout l;
  l.num_requests = problem.demand.requests.size();
  l.num_arcs = problem.network.arcs().size();
  l.num_nodes = problem.network.nodes().size();
  std::size_t next = l.num_requests * l.num_arcs;
  l.av_rebalancing_column.assign(l.num_arcs, FlowLayout::npos);
  l.mm_rebalancing_column.assign(l.num_arcs, FlowLayout::npos);
  for (std::size_t a = 0; a < l.num_arcs; ++a)
    if (problem.network.arcs()[a].kind == ArcKind::RoadAV) l.av_rebalancing_column[a] = next++;
  for (std::size_t a = 0; a < l.num_arcs; ++a)
    if (problem.network.arcs()[a].kind == ArcKind::RoadMM) l.mm_rebalancing_column[a] = next++;
  const auto& net = problem.network;
  l.first_balance_row = l.num_requests * l.num_nodes;
  l.first_capacity_row =
      l.first_balance_row + net.count_nodes(Layer::RoadAV) + net.count_nodes(Layer::RoadMM);
  l.av_fleet_row = l.first_capacity_row + net.count_arcs(ArcKind::RoadAV);
  l.mm_fleet_row = l.av_fleet_row + 1;
  return l;
}

lp::LinearProgram build_lp(const FlowProblem& problem) {
  check_problem(problem);
  const auto& net = problem.network;
  const auto& arcs = net.arcs();
  const FlowLayout l = layout_of(problem);
  const double alpha_tot = problem.demand.total_rate();

  lp::LinearProgram lp;
  for (std::size_t m = 0; m < l.num_requests; ++m)
    for (std::size_t a = 0; a < l.num_arcs; ++a)
      lp.add_column(arcs[a].travel_time_s / 3600.0 / alpha_tot,
                    "f_" + std::to_string(m) + "_" + std::to_string(a));
  for (std::size_t a = 0; a < l.num_arcs; ++a)
    if (l.av_rebalancing_column[a] != FlowLayout::npos)
      lp.add_column(0.0, "rv_" + std::to_string(a));
  for (std::size_t a = 0; a < l.num_arcs; ++a)
    if (l.mm_rebalancing_column[a] != FlowLayout::npos)
      lp.add_column(0.0, "rm_" + std::to_string(a));

  std::vector<std::vector<std::size_t>> out(l.num_nodes), in(l.num_nodes);
  for (std::size_t a = 0; a < l.num_arcs; ++a) {
    out[arcs[a].tail].push_back(a);
    in[arcs[a].head].push_back(a);
  }

  for (std::size_t m = 0; m < l.num_requests; ++m) {
    const auto& req = problem.demand.requests[m];
    for (std::size_t v = 0; v < l.num_nodes; ++v) {
      std::vector<lp::Term> t;
      for (std::size_t a : out[v]) t.push_back({l.flow_column(m, a), 1.0});
      for (std::size_t a : in[v]) t.push_back({l.flow_column(m, a), -1.0});
      double rhs = 0.0;
      if (v == req.origin) rhs = req.rate_per_hour;
      if (v == req.destination) rhs = -req.rate_per_hour;
      lp.add_row(std::move(t), lp::Sense::Eq, rhs,
                 "cons_" + std::to_string(m) + "_" + net.node(v).id);
    }
  }

  auto vehicle_terms = [&](std::size_t a, double sign, std::vector<lp::Term>& t) {
    for (std::size_t m = 0; m < l.num_requests; ++m) t.push_back({l.flow_column(m, a), sign});
    const std::size_t r = arcs[a].kind == ArcKind::RoadAV ? l.av_rebalancing_column[a]
                                                           : l.mm_rebalancing_column[a];
    t.push_back({r, sign});
  };

  for (Layer layer : {Layer::RoadAV, Layer::RoadMM}) {
    const ArcKind kind = layer == Layer::RoadAV ? ArcKind::RoadAV : ArcKind::RoadMM;
    for (std::size_t v = 0; v < l.num_nodes; ++v) {
      if (net.node(v).layer != layer) continue;
      std::vector<lp::Term> t;
      for (std::size_t a : out[v])
        if (arcs[a].kind == kind) vehicle_terms(a, 1.0, t);
      for (std::size_t a : in[v])
        if (arcs[a].kind == kind) vehicle_terms(a, -1.0, t);
      lp.add_row(std::move(t), lp::Sense::Eq, 0.0,
                 std::string(layer == Layer::RoadAV ? "bal_av_" : "bal_mm_") + net.node(v).id);
    }
  }

  for (std::size_t a = 0; a < l.num_arcs; ++a) {
    if (arcs[a].kind != ArcKind::RoadAV) continue;
    std::vector<lp::Term> t;
    vehicle_terms(a, 1.0, t);
    const double room = arcs[a].capacity_vph.value_or(0.0) - arcs[a].baseline_vph.value_or(0.0);
    if (!arcs[a].capacity_vph) throw BuildError("AV road arc without capacity");
    lp.add_row(std::move(t), lp::Sense::Le, room, "cap_" + std::to_string(a));
  }

  for (ArcKind kind : {ArcKind::RoadAV, ArcKind::RoadMM}) {
    std::vector<lp::Term> t;
    for (std::size_t a = 0; a < l.num_arcs; ++a) {
      if (arcs[a].kind != kind) continue;
      const double hours = arcs[a].travel_time_s / 3600.0;
      for (std::size_t m = 0; m < l.num_requests; ++m) t.push_back({l.flow_column(m, a), hours});
      const std::size_t r = kind == ArcKind::RoadAV ? l.av_rebalancing_column[a]
                                                    : l.mm_rebalancing_column[a];
      t.push_back({r, hours});
    }
    lp.add_row(std::move(t), lp::Sense::Le,
               kind == ArcKind::RoadAV ? problem.n_v_max : problem.n_m_max,
               kind == ArcKind::RoadAV ? "fleet_av" : "fleet_mm");
  }
  return lp;
}

const char* to_string(FlowStatus status) {
  switch (status) {
    case FlowStatus::Optimal: return "optimal";
    case FlowStatus::Infeasible: return "infeasible";
    case FlowStatus::NumericalFailure: return "numerical_failure";
  }
  return "?";
}

namespace {

FlowSolution failure(const lp::Result& r, const char* stage) {
  FlowSolution s;
  s.status = r.status == lp::Status::Infeasible ? FlowStatus::Infeasible
                                                : FlowStatus::NumericalFailure;
  s.message = std::string(stage) + ": " + lp::to_string(r.status) +
              (r.message.empty() ? "" : " (" + r.message + ")");
  s.iterations = r.iterations;
  return s;
}

}  // namespace

FlowSolution solve_flow(const FlowProblem& problem, const lp::LpSolver* solver) {
  const lp::RevisedSimplex fallback;
  const lp::LpSolver& engine = solver ? *solver : fallback;
  const auto& arcs = problem.network.arcs();
  const FlowLayout l = layout_of(problem);
  const double alpha_tot = problem.demand.total_rate();

  lp::LinearProgram lp = build_lp(problem);
  const lp::Result first = engine.solve(lp);
  if (first.status != lp::Status::Optimal) return failure(first, "time stage");

  // Total travel time in seconds, as a row, and its optimum.
  std::vector<lp::Term> time_row;
  double total_s = 0.0;
  for (std::size_t m = 0; m < l.num_requests; ++m)
    for (std::size_t a = 0; a < l.num_arcs; ++a) {
      const std::size_t c = l.flow_column(m, a);
      time_row.push_back({c, arcs[a].travel_time_s});
      total_s += arcs[a].travel_time_s * first.x[c];
    }
  lp.add_row(std::move(time_row), lp::Sense::Le, total_s * (1.0 + kStageTwoSlack), "time_opt");
  for (std::size_t j = 0; j < lp.num_columns(); ++j) lp.set_cost(j, 0.0);
  for (std::size_t a = 0; a < l.num_arcs; ++a) {
    if (!is_road(arcs[a].kind)) continue;
    for (std::size_t m = 0; m < l.num_requests; ++m)
      lp.set_cost(l.flow_column(m, a), arcs[a].length_miles);
    const std::size_t r = arcs[a].kind == ArcKind::RoadAV ? l.av_rebalancing_column[a]
                                                           : l.mm_rebalancing_column[a];
    lp.set_cost(r, arcs[a].length_miles);
  }
  const lp::Result second = engine.solve(lp, first.basis);
  if (second.status != lp::Status::Optimal) return failure(second, "mileage stage");

  FlowSolution s;
  s.status = FlowStatus::Optimal;
  s.iterations = first.iterations + second.iterations;
  s.stage1_t_avg_s = total_s / alpha_tot;
  s.request_flows.assign(l.num_requests, std::vector<double>(l.num_arcs, 0.0));
  s.av_rebalancing.assign(l.num_arcs, 0.0);
  s.mm_rebalancing.assign(l.num_arcs, 0.0);
  double time_s = 0.0;
  for (std::size_t m = 0; m < l.num_requests; ++m)
    for (std::size_t a = 0; a < l.num_arcs; ++a) {
      const double f = second.x[l.flow_column(m, a)];
      s.request_flows[m][a] = f;
      time_s += arcs[a].travel_time_s * f;
    }
  s.stage2_t_avg_s = time_s / alpha_tot;
  s.t_avg_s = canonical(s.stage1_t_avg_s);

  const double g_per_kj = problem.energy.gamma_g_per_kj;
  for (std::size_t a = 0; a < l.num_arcs; ++a) {
    const auto& arc = arcs[a];
    if (!is_road(arc.kind)) continue;
    const bool av = arc.kind == ArcKind::RoadAV;
    const double r = second.x[av ? l.av_rebalancing_column[a] : l.mm_rebalancing_column[a]];
    (av ? s.av_rebalancing : s.mm_rebalancing)[a] = r;
    double vehicles = r;
    for (std::size_t m = 0; m < l.num_requests; ++m) vehicles += s.request_flows[m][a];
    const double hours = arc.travel_time_s / 3600.0;
    const double kg = network::arc_energy(arc, problem.energy) * g_per_kj / 1000.0;
    if (av) {
      s.s_v_tot += arc.length_miles * vehicles;
      s.m_co2_v += kg * vehicles;
      s.n_v_used += hours * vehicles;
    } else {
      s.s_m_tot += arc.length_miles * vehicles;
      s.m_co2_m += kg * vehicles;
      s.n_m_used += hours * vehicles;
    }
  }
  for (double* v : {&s.s_v_tot, &s.s_m_tot, &s.m_co2_v, &s.m_co2_m, &s.n_v_used, &s.n_m_used})
    *v = canonical(*v);
  return s;
}

double FlowResiduals::max() const {
  return std::max({conservation, vehicle_balance, congestion, av_fleet, mm_fleet, negativity});
}

FlowResiduals flow_residuals(const FlowProblem& problem, const FlowSolution& s) {
  FlowResiduals res;
  const auto& net = problem.network;
  const auto& arcs = net.arcs();
  const std::size_t n = net.nodes().size();
  for (std::size_t m = 0; m < problem.demand.requests.size(); ++m) {
    const auto& req = problem.demand.requests[m];
    std::vector<double> net_out(n, 0.0);
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      const double f = s.request_flows[m][a];
      res.negativity = std::max(res.negativity, -f);
      net_out[arcs[a].tail] += f;
      net_out[arcs[a].head] -= f;
    }
    net_out[req.origin] -= req.rate_per_hour;
    net_out[req.destination] += req.rate_per_hour;
    for (double v : net_out) res.conservation = std::max(res.conservation, std::abs(v));
  }
  std::vector<double> balance(n, 0.0);
  double av_fleet = 0.0, mm_fleet = 0.0;
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const auto& arc = arcs[a];
    if (!is_road(arc.kind)) continue;
    const bool av = arc.kind == ArcKind::RoadAV;
    const double r = (av ? s.av_rebalancing : s.mm_rebalancing)[a];
    res.negativity = std::max(res.negativity, -r);
    double vehicles = r;
    for (const auto& fm : s.request_flows) vehicles += fm[a];
    balance[arc.tail] += vehicles;
    balance[arc.head] -= vehicles;
    (av ? av_fleet : mm_fleet) += arc.travel_time_s / 3600.0 * vehicles;
    if (av)
      res.congestion = std::max(res.congestion, vehicles + arc.baseline_vph.value_or(0.0) -
                                                    arc.capacity_vph.value_or(0.0));
  }
  for (double v : balance) res.vehicle_balance = std::max(res.vehicle_balance, std::abs(v));
  res.av_fleet = std::max(0.0, av_fleet - problem.n_v_max);
  res.mm_fleet = std::max(0.0, mm_fleet - problem.n_m_max);
  res.congestion = std::max(0.0, res.congestion);
  return res;
}

}  // namespace mobco::flow
