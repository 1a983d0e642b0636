#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mobco/lp.hpp"
#include "mobco/network.hpp"

namespace mobco::flow {

/// Routing problem on a network whose travel times are already computed.
struct FlowProblem {
  network::Network network;
  network::DemandSet demand;
  double n_v_max = 0.0;  // AV fleet bound
  double n_m_max = 0.0;  // micromobility fleet bound
  network::EnergyModel energy = network::EnergyModel::defaults();
};

/// Column and row positions of the flow LP.
struct FlowLayout {
  std::size_t num_requests = 0;
  std::size_t num_arcs = 0;
  std::size_t num_nodes = 0;
  std::vector<std::size_t> av_rebalancing_column;  // per arc, npos if not RoadAV
  std::vector<std::size_t> mm_rebalancing_column;  // per arc, npos if not RoadMM
  std::size_t first_balance_row = 0;
  std::size_t first_capacity_row = 0;
  std::size_t av_fleet_row = 0;
  std::size_t mm_fleet_row = 0;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t flow_column(std::size_t request, std::size_t arc) const {
    return request * num_arcs + arc;
  }
};

FlowLayout layout_of(const FlowProblem& problem);

/// Arc-based multi-commodity flow LP: per-request conservation at every node,
/// vehicle balance at every road node, congestion on AV road arcs, and AV and
/// MM fleet bounds. The objective is average travel time in hours. Throws
/// BuildError when a request does not join two walk nodes of the network,
/// when the demand is empty, or when fleet bounds are negative.
lp::LinearProgram build_lp(const FlowProblem& problem);

enum class FlowStatus { Optimal, Infeasible, NumericalFailure };
const char* to_string(FlowStatus status);

struct FlowSolution {
  FlowStatus status = FlowStatus::NumericalFailure;
  std::string message;
  std::vector<std::vector<double>> request_flows;  // [request][arc], customers/hour
  std::vector<double> av_rebalancing;              // per arc, vehicles/hour
  std::vector<double> mm_rebalancing;              // per arc, vehicles/hour
  double t_avg_s = 0.0;         // optimal average time, canonically rounded
  double stage1_t_avg_s = 0.0;  // as computed by the time stage
  double stage2_t_avg_s = 0.0;  // of the returned flows, within 1e-10 relative
  double s_v_tot = 0.0;  // AV miles per hour
  double s_m_tot = 0.0;  // MM miles per hour
  double m_co2_v = 0.0;  // kg per hour
  double m_co2_m = 0.0;  // kg per hour
  double n_v_used = 0.0;
  double n_m_used = 0.0;
  std::size_t iterations = 0;
};

/// Minimizes average travel time, then, holding that optimum, total vehicle
/// mileage. Reported aggregates are rounded to 32 significant bits. Uses
/// RevisedSimplex unless another solver is given.
FlowSolution solve_flow(const FlowProblem& problem, const lp::LpSolver* solver = nullptr);

/// Largest absolute violations of the model's constraint families.
struct FlowResiduals {
  double conservation = 0.0;
  double vehicle_balance = 0.0;
  double congestion = 0.0;
  double av_fleet = 0.0;
  double mm_fleet = 0.0;
  double negativity = 0.0;
  double max() const;
};

FlowResiduals flow_residuals(const FlowProblem& problem, const FlowSolution& solution);

}  // namespace mobco::flow
