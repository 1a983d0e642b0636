// Acceptance checks: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "mobco/catalog.hpp"
#include "mobco/scenario.hpp"
#include "oracles.hpp"

using namespace mobco;
using namespace mobco::testing;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome pareto_kernel() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<std::size_t> size(0, 200), dim(2, 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double kernel_s = 0.0;
  std::size_t mismatches = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = size(rng), d = dim(rng);
    std::vector<poset::Point> pts;
    if (k % 2 == 0) {
      pts = random_points(rng, n, d);
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> c(d);
        for (double& x : c) x = u(rng);
        pts.push_back(poset::Point::of(c));
      }
    }
    const auto t0 = Clock::now();
    const poset::Antichain a = poset::pareto_min(d, pts);
    kernel_s += seconds_since(t0);
    if (a.points() != brute_pareto(pts)) ++mismatches;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "1000 point sets, %zu mismatches, pareto_min %.3f s (limit 5 s)",
                mismatches, kernel_s);
  return {mismatches == 0 && kernel_s < 5.0, buf};
}

Outcome composition() {
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<std::size_t> entries(1, 10);
  std::size_t bad_series = 0, bad_parallel = 0, bad_diagram = 0;
  for (int k = 0; k < 500; ++k) {
    const auto p = random_catalog(rng, "p", 1, 2, entries(rng));
    const auto q = random_catalog(rng, "q", 2, 1, entries(rng));
    const auto f1 = random_query(rng, 1);
    if (points_of(codesign::series(p, q).query(f1)) != brute_series(p, q, f1)) ++bad_series;
    const auto f3 = random_query(rng, 3);
    if (points_of(codesign::parallel(p, q).query(f3)) != brute_parallel(p, q, f3)) ++bad_parallel;
    const Triple t = random_triple(rng);
    const auto f2 = random_query(rng, 2);
    if (points_of(codesign::solve_diagram(triple_diagram(t), f2)) != brute_triple(t, f2))
      ++bad_diagram;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "500 pairs and triples, mismatches: series %zu, parallel %zu, diagram %zu",
                bad_series, bad_parallel, bad_diagram);
  return {bad_series + bad_parallel + bad_diagram == 0, buf};
}

Outcome lp_correctness() {
  std::mt19937_64 rng(1003);
  double worst_gap = 0.0, worst_residual = 0.0;
  std::size_t status_mismatch = 0;
  for (int k = 0; k < 200; ++k) {
    const flow::FlowProblem p = random_flow_instance(rng);
    const flow::FlowSolution s = flow::solve_flow(p);
    const PathOracle o = path_oracle(p);
    if ((s.status == flow::FlowStatus::Optimal) != o.feasible) {
      ++status_mismatch;
      continue;
    }
    if (!o.feasible) continue;
    worst_gap = std::max(worst_gap, std::abs(s.t_avg_s - o.t_avg_s));
    worst_residual = std::max(worst_residual, flow::flow_residuals(p, s).max());
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "200 flow instances, max |t_avg - oracle| %.3g s (limit 1e-6), max residual %.3g "
                "(limit 1e-6), status mismatches %zu",
                worst_gap, worst_residual, status_mismatch);
  return {status_mismatch == 0 && worst_gap <= 1e-6 && worst_residual <= 1e-6, buf};
}

Outcome hand_instance_check() {
  const flow::FlowProblem p = hand_instance(8);
  const flow::FlowSolution s = flow::solve_flow(p);
  const PathOracle o = path_oracle(p);
  const double mileage = s.s_v_tot + s.s_m_tot;
  char buf[200];
  std::snprintf(buf, sizeof buf, "t_avg %.4f s (664.2 +- 0.1), mileage %.6f vs oracle %.6f",
                s.t_avg_s, mileage, o.mileage);
  const bool ok = s.status == flow::FlowStatus::Optimal && o.feasible &&
                  std::abs(s.t_avg_s - 664.2) <= 0.1 && std::abs(mileage - o.mileage) <= 1e-6;
  return {ok, buf};
}

Outcome catalog_arithmetic() {
  const auto file = catalog::load_catalog(data_dir() + "/vehicles.catalog.json");
  const double c1 = mobility::subway_cost(file.subway, 1.0) / 1e6;
  const double c15 = mobility::subway_cost(file.subway, 1.5) / 1e6;
  const double c2 = mobility::subway_cost(file.subway, 2.0) / 1e6;
  const bool subway_ok =
      std::abs(c1 - 12.33) <= 0.01 && std::abs(c15 - 20.76) <= 0.01 && std::abs(c2 - 29.09) <= 0.01;

  const auto sys = load_system("S1.config.json");
  const auto prepared = mobility::prepare_flow(*sys, mobility::FlowKey{}, sys->demand);
  double boarding = -1.0;
  for (const auto& a : prepared.network.arcs())
    if (a.kind == network::ArcKind::ModeSwitch &&
        prepared.network.node(a.tail).layer == network::Layer::Walk &&
        prepared.network.node(a.head).layer == network::Layer::Transit) {
      boarding = a.travel_time_s;
      break;
    }

  const auto q = mobility::av_problem(catalog::av_catalog(file, "S2-2020")).query(poset::Point{33});
  const double fixed = q.size() == 1 ? q[0].resources[0].value() : -1.0;

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "subway %.4f / %.4f / %.4f M$/month, boarding %.17g s, S2-2020 @ 33 mph fixed %.17g $",
                c1, c15, c2, boarding, fixed);
  return {subway_ok && boarding == 240.0 && fixed == 122000.0, buf};
}

Outcome monotonicity() {
  std::size_t violations = 0, pairs = 0;
  const auto file = catalog::load_catalog(data_dir() + "/vehicles.catalog.json");

  std::vector<std::pair<poset::Point, poset::Point>> speed_pairs, train_pairs;
  std::vector<double> speeds{0};
  for (double v = 2.5; v <= 60; v += 2.5) speeds.push_back(v);
  for (double a : speeds)
    for (double b : speeds)
      if (a <= b) speed_pairs.push_back({poset::Point{a}, poset::Point{b}});
  const std::vector<double> trains{0, 28, 56, 84, 112, 140};
  for (double a : trains)
    for (double b : trains)
      if (a <= b) train_pairs.push_back({poset::Point{a}, poset::Point{b}});

  auto tally = [&](const codesign::MonotonicityReport& r) {
    violations += r.violations.size();
    pairs += r.pairs_checked;
  };
  for (const auto& name : file.scenario_names()) {
    tally(codesign::check_monotone(mobility::av_problem(catalog::av_catalog(file, name)),
                                   speed_pairs));
    if (auto mm = catalog::mm_catalog(file, name))
      tally(codesign::check_monotone(mobility::mm_problem(*mm), speed_pairs));
  }
  tally(codesign::check_monotone(mobility::subway_problem(file.subway, {1, 1.5, 2}), train_pairs));

  // Flow DP over nested demand sets on the synthetic city.
  const auto sys = load_system("S1.config.json");
  auto cache = std::make_shared<mobility::FlowCache>();
  std::mt19937_64 rng(1006);
  std::uniform_real_distribution<double> share(0.1, 1.0);
  std::bernoulli_distribution keep(0.75);
  for (int nest = 0; nest < 10; ++nest) {
    std::vector<network::DemandSet> chain{sys->demand};
    network::DemandSet smaller;
    for (const auto& r : sys->demand.requests)
      if (keep(rng)) smaller.requests.push_back({r.origin, r.destination, r.rate_per_hour * share(rng)});
    chain.push_back(smaller);
    const auto dp = mobility::intermodal_problem(sys, cache, chain);
    std::vector<std::pair<poset::Point, poset::Point>> nested;
    for (std::size_t i = 0; i < chain.size(); ++i)
      for (std::size_t j = i; j < chain.size(); ++j) {
        if (!network::demand_leq(chain[j], chain[i])) ++violations;
        nested.push_back({mobility::demand_point(*sys, chain[j]),
                          mobility::demand_point(*sys, chain[i])});
      }
    tally(codesign::check_monotone(dp, nested));
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zu pairs over %zu catalogs, subway and 10 demand nestings, %zu violations", pairs,
                file.scenario_names().size(), violations);
  return {violations == 0, buf};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome end_to_end() {
  const fs::path root = fs::temp_directory_path() / "mobco_acceptance";
  fs::remove_all(root);
  const std::string config = data_dir() + "/S1.config.json";
  std::ostringstream out, err;
  auto solve = [&](const std::string& tag, int jobs) {
    scenario::CliOverrides o;
    o.jobs = jobs;
    o.output_dir = (root / tag).string();
    return scenario::cmd_solve(config, o, out, err);
  };
  const auto t0 = Clock::now();
  const int code = solve("first", 1);
  const double elapsed = seconds_since(t0);
  if (code != 0) return {false, "solve exited " + std::to_string(code) + ": " + err.str()};
  const bool rerun_ok = solve("rerun", 1) == 0 && solve("jobs8", 8) == 0;

  bool identical = rerun_ok;
  for (const char* f : {"front3d.csv", "front2d.csv", "all_points.csv", "manifest.json"}) {
    const std::string a = slurp(root / "first" / f);
    identical = identical && !a.empty() && a == slurp(root / "rerun" / f) &&
                a == slurp(root / "jobs8" / f);
  }

  const auto s = scenario::load_scenario(scenario::load_config(config));
  const auto r = scenario::run(s, {});
  std::size_t comparable = 0;
  for (std::size_t i = 0; i < r.front3d.size(); ++i)
    for (std::size_t j = 0; j < r.front3d.size(); ++j) {
      if (i == j) continue;
      const auto& p = r.front3d[i].resources;
      const auto& q = r.front3d[j].resources;
      if (p.t_avg_s <= q.t_avg_s && p.cost_usd_per_month <= q.cost_usd_per_month &&
          p.co2_kg_per_month <= q.co2_kg_per_month)
        ++comparable;
    }

  char buf[240];
  std::snprintf(buf, sizeof buf,
                "S1 %zu points in %.2f s (limit 60 s), 3D front %zu rows, %zu comparable pairs, "
                "byte-identical across reruns and --jobs 1/8: %s",
                r.points.size(), elapsed, r.front3d.size(), comparable, identical ? "yes" : "no");
  return {elapsed < 60.0 && r.points.size() == 210 && !r.front3d.empty() && comparable == 0 &&
              identical,
          buf};
}

Outcome catalog_trend() {
  auto front_of = [](const std::string& config) {
    return scenario::run(scenario::load_scenario(scenario::load_config(data_dir() + "/" + config)),
                         {});
  };
  const auto old_front = front_of("S2-2020.config.json");
  const auto new_front = front_of("S2-2025.config.json");

  std::vector<poset::Point> new3, new2;
  for (const auto& row : new_front.front3d)
    new3.push_back(poset::Point{row.resources.t_avg_s, row.resources.cost_usd_per_month,
                                row.resources.co2_kg_per_month});
  for (const auto& row : new_front.front2d) new2.push_back(poset::Point{row.t_avg_s, row.cost_2d});
  const auto a3 = poset::pareto_min(3, new3);
  const auto a2 = poset::pareto_min(2, new2);

  std::size_t undominated = 0;
  for (const auto& row : old_front.front3d)
    if (!poset::dominates(a3, poset::Point{row.resources.t_avg_s, row.resources.cost_usd_per_month,
                                           row.resources.co2_kg_per_month}))
      ++undominated;
  for (const auto& row : old_front.front2d)
    if (!poset::dominates(a2, poset::Point{row.t_avg_s, row.cost_2d})) ++undominated;

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "S2-2020 fronts (%zu 3D, %zu 2D rows) vs S2-2025: %zu rows not dominated",
                old_front.front3d.size(), old_front.front2d.size(), undominated);
  return {!old_front.front3d.empty() && !new_front.front3d.empty() && undominated == 0, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"pareto kernel", pareto_kernel},     {"composition", composition},
      {"lp correctness", lp_correctness},   {"hand instance", hand_instance_check},
      {"catalog arithmetic", catalog_arithmetic},    {"monotonicity", monotonicity},
      {"end to end", end_to_end},           {"catalog trend", catalog_trend},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu [%s] %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
