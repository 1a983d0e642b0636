#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mobco/errors.hpp"
#include "mobco/flow.hpp"
#include "mobco/mobility.hpp"
#include "oracles.hpp"

using namespace mobco;
using namespace mobco::flow;
using namespace mobco::testing;

namespace {

double av_flow(const FlowProblem& p, const FlowSolution& s) {
  double total = 0.0;
  for (std::size_t a = 0; a < p.network.arcs().size(); ++a) {
    if (p.network.arcs()[a].kind != network::ArcKind::RoadAV) continue;
    for (const auto& req : s.request_flows) total += req[a];
    total += s.av_rebalancing[a];
  }
  return total;
}

}  // namespace

TEST(HandInstance, AmpleFleetUsesAvs) {
  const FlowProblem p = hand_instance(10);
  const FlowSolution s = solve_flow(p);
  ASSERT_EQ(s.status, FlowStatus::Optimal);
  EXPECT_NEAR(s.t_avg_s, 540.0, 1e-6);
  EXPECT_NEAR(s.n_v_used, 10.0, 1e-6);
  EXPECT_NEAR(s.s_v_tot, 200.0, 1e-6);
}

TEST(HandInstance, BindingFleet) {
  const FlowProblem p = hand_instance(8);
  const FlowSolution s = solve_flow(p);
  ASSERT_EQ(s.status, FlowStatus::Optimal);
  EXPECT_NEAR(s.t_avg_s, 664.2, 0.1);
  EXPECT_NEAR(s.t_avg_s, (80 * 540 + 20 * 3600 / 3.1) / 100, 1e-6);
  EXPECT_NEAR(s.n_v_used, 8.0, 1e-6);
  const PathOracle o = path_oracle(p);
  ASSERT_TRUE(o.feasible);
  EXPECT_NEAR(s.t_avg_s, o.t_avg_s, 1e-6);
  EXPECT_NEAR(s.s_v_tot + s.s_m_tot, o.mileage, 1e-6);
}

TEST(HandInstance, NoFleetWalks) {
  const FlowProblem p = hand_instance(0);
  const FlowSolution s = solve_flow(p);
  ASSERT_EQ(s.status, FlowStatus::Optimal);
  EXPECT_NEAR(s.t_avg_s, 3600 / 3.1, 1e-6);
  EXPECT_NEAR(av_flow(p, s), 0.0, 1e-9);
}

TEST(Flow, SymmetricRequestsNeedNoRebalancing) {
  FlowProblem p = hand_instance(100);
  p.demand.requests.push_back({1, 0, 100.0});
  const FlowSolution s = solve_flow(p);
  ASSERT_EQ(s.status, FlowStatus::Optimal);
  EXPECT_NEAR(s.t_avg_s, 540.0, 1e-6);
  for (double r : s.av_rebalancing) EXPECT_NEAR(r, 0.0, 1e-9);
}

TEST(Flow, WalkOnlyTwoNodes) {
  FlowProblem p;
  p.network.add_node({"A", network::Layer::Walk, 0, 0});
  p.network.add_node({"B", network::Layer::Walk, 1, 0});
  network::Arc a;
  a.tail = 0;
  a.head = 1;
  a.kind = network::ArcKind::Walk;
  a.length_miles = 0.5;
  p.network.add_arc(a);
  p.network = network::compute_travel_times(p.network, {});
  p.demand.requests.push_back({0, 1, 7.0});
  const auto lp = build_lp(p);
  EXPECT_EQ(lp.num_columns(), 1u);
  const FlowSolution s = solve_flow(p);
  ASSERT_EQ(s.status, FlowStatus::Optimal);
  EXPECT_NEAR(s.t_avg_s, 1800 / 3.1, 1e-6);
}

TEST(Flow, EmptyDemandIsABuildError) {
  FlowProblem p = hand_instance(1);
  p.demand.requests.clear();
  EXPECT_THROW(build_lp(p), BuildError);
  p = hand_instance(1);
  p.n_v_max = -1;
  EXPECT_THROW(build_lp(p), BuildError);
}

TEST(Flow, RowAndColumnCountsOnCity) {
  const auto sys = load_system("S5-2025.config.json");
  network::DemandSet d;
  d.requests.assign(sys->demand.requests.begin(), sys->demand.requests.begin() + 3);
  const mobility::FlowKey key{45, 1000, 15, 500, 1.0};
  const FlowProblem p = mobility::prepare_flow(*sys, key, d);
  const auto& net = p.network;
  const std::size_t m = 3, nv = net.nodes().size(), na = net.arcs().size();
  const std::size_t vrv = net.count_nodes(network::Layer::RoadAV);
  const std::size_t vrm = net.count_nodes(network::Layer::RoadMM);
  const std::size_t arv = net.count_arcs(network::ArcKind::RoadAV);
  const std::size_t arm = net.count_arcs(network::ArcKind::RoadMM);
  ASSERT_GT(arv, 0u);
  ASSERT_GT(arm, 0u);
  const auto lp = build_lp(p);
  EXPECT_EQ(lp.num_rows(), m * nv + vrv + vrm + arv + 2);
  EXPECT_EQ(lp.num_columns(), m * na + arv + arm);
  const FlowLayout l = layout_of(p);
  EXPECT_EQ(l.first_balance_row, m * nv);
  EXPECT_EQ(l.av_fleet_row + 1, l.mm_fleet_row);
}

TEST(Flow, MatchesPathOracleWithSmallResiduals) {
  std::mt19937_64 rng(41);
  int feasible = 0, with_fleet_flow = 0;
  for (int k = 0; k < 60; ++k) {
    const FlowProblem p = random_flow_instance(rng);
    const FlowSolution s = solve_flow(p);
    const PathOracle o = path_oracle(p);
    ASSERT_EQ(s.status == FlowStatus::Optimal, o.feasible) << k;
    if (!o.feasible) continue;
    ++feasible;
    if (s.s_v_tot + s.s_m_tot > 1e-6) ++with_fleet_flow;
    EXPECT_NEAR(s.t_avg_s, o.t_avg_s, 1e-6) << k;
    EXPECT_NEAR(s.s_v_tot + s.s_m_tot, o.mileage, 1e-6 * (1.0 + o.mileage)) << k;
    EXPECT_LE(flow_residuals(p, s).max(), 1e-6) << k;
    EXPECT_LE(s.n_v_used, p.n_v_max + 1e-6);
    EXPECT_LE(s.n_m_used, p.n_m_max + 1e-6);
    EXPECT_NEAR(s.stage2_t_avg_s, s.stage1_t_avg_s, 1e-9 * s.stage1_t_avg_s) << k;
  }
  EXPECT_GE(feasible, 30);
  EXPECT_GE(with_fleet_flow, 10);
}

TEST(Flow, ZeroFleetForbidsAvFlow) {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 20; ++k) {
    FlowProblem p = random_flow_instance(rng);
    p.n_v_max = 0;
    const FlowSolution s = solve_flow(p);
    ASSERT_EQ(s.status, FlowStatus::Optimal);
    EXPECT_NEAR(av_flow(p, s), 0.0, 1e-9);
  }
}

TEST(Flow, MonotoneComfort) {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 40; ++k) {
    const FlowProblem p = random_flow_instance(rng);
    const double base = solve_flow(p).t_avg_s;
    FlowProblem more = p;
    more.n_v_max += 2;
    EXPECT_LE(solve_flow(more).t_avg_s, base * (1 + 1e-9)) << k;
    more = p;
    more.n_m_max += 2;
    EXPECT_LE(solve_flow(more).t_avg_s, base * (1 + 1e-9)) << k;
    more = p;
    for (auto& a : more.network.arcs())
      if (a.capacity_vph) *a.capacity_vph += 20;
    EXPECT_LE(solve_flow(more).t_avg_s, base * (1 + 1e-9)) << k;
  }
}

TEST(Flow, DeterministicRepeatedSolve) {
  std::mt19937_64 rng(44);
  const FlowProblem p = random_flow_instance(rng);
  const FlowSolution a = solve_flow(p), b = solve_flow(p);
  EXPECT_EQ(a.request_flows, b.request_flows);
  EXPECT_EQ(a.t_avg_s, b.t_avg_s);
}
