#include "mobco/scenario.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include "detail/json.hpp"
#include "mobco/catalog.hpp"
#include "mobco/errors.hpp"

#ifndef MOBCO_VERSION
#define MOBCO_VERSION "0.0.0"
#endif

namespace mobco::scenario {

namespace fs = std::filesystem;
using detail::json;

namespace {

std::vector<double> parse_grid_axis(const json& j, const std::string& where) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const json& v : j) {
      if (!v.is_number()) throw ConfigError(where + ": grid values must be numbers");
      out.push_back(v.get<double>());
    }
  } else if (j.is_object()) {
    detail::only_fields(j, {"from", "to", "step"}, where);
    const double from = detail::number(j, "from", where);
    const double to = detail::number(j, "to", where);
    const double step = detail::number(j, "step", where);
    if (!(step > 0.0) || !(to >= from))
      throw ConfigError(where + ": need step > 0 and to >= from");
    const double span = (to - from) / step;
    const auto n = static_cast<long>(std::llround(span));
    if (std::abs(span - static_cast<double>(n)) > 1e-9 * std::max(1.0, span))
      throw ConfigError(where + ": (to - from) is not a multiple of step");
    for (long i = 0; i <= n; ++i) out.push_back(from + static_cast<double>(i) * step);
  } else {
    throw ConfigError(where + ": expected an array or {from, to, step}");
  }
  if (out.empty()) throw ConfigError(where + ": grid is empty");
  return out;
}

std::string resolve(const std::string& base, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute() || base.empty()) return p;
  return (fs::path(base) / p).lexically_normal().string();
}

void check_range(const std::optional<double>& v, double lo, double hi, bool lo_open,
                 const char* name) {
  if (!v) return;
  const bool ok = std::isfinite(*v) && (lo_open ? *v > lo : *v >= lo) && *v <= hi;
  if (!ok) throw ConfigError(std::string("params.") + name + " is out of range");
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string file_tag(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-' && c != '_') c = '_';
  return s;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + p.string() + "'");
  out << text;
  if (!out) throw IoError("error while writing '" + p.string() + "'");
}

json design_json(const mobility::RecordDesign& d) {
  return {{"av_entry", d.av_entry},         {"av_speed_mph", d.av_speed_mph},
          {"n_v_max", d.n_v_max},           {"mm_entry", d.mm_entry},
          {"mm_speed_mph", d.mm_speed_mph}, {"n_m_max", d.n_m_max},
          {"subway_level", d.subway_level}};
}

const char* kDesignHeader = "av_entry,av_speed_mph,n_v_max,mm_entry,mm_speed_mph,n_m_max,subway_level";

std::string design_csv(const mobility::RecordDesign& d) {
  return csv_field(d.av_entry) + "," + fmt6(d.av_speed_mph) + "," + fmt6(d.n_v_max) + "," +
         csv_field(d.mm_entry) + "," + fmt6(d.mm_speed_mph) + "," + fmt6(d.n_m_max) + "," +
         fmt6(d.subway_level);
}

mobility::RecordDesign design_of_point(const mobility::MobilitySystem& sys,
                                       const mobility::DesignPoint& p) {
  mobility::RecordDesign d;
  const auto& av = sys.av.entries.at(p.av_entry);
  d.av_entry = av.id;
  d.av_speed_mph = av.speed_mph;
  d.n_v_max = p.n_v_max;
  if (sys.mm && p.mm_entry) {
    const auto& mm = sys.mm->entries.at(*p.mm_entry);
    d.mm_entry = mm.id;
    d.mm_speed_mph = mm.speed_mph;
    d.n_m_max = p.n_m_max;
  }
  d.subway_level = p.subway_level;
  return d;
}

json settings_json(const ScenarioConfig& c) {
  json params = {{"hours_per_month", c.hours_per_month},
                 {"emission_price_usd_per_kg", c.emission_price_usd_per_kg},
                 {"feasibility_tolerance", c.feasibility_tolerance},
                 {"optimality_tolerance", c.optimality_tolerance}};
  auto put = [&](const char* k, const std::optional<double>& v) {
    params[k] = v ? json(*v) : json(nullptr);
  };
  put("beta", c.beta);
  put("walk_speed_mph", c.walk_speed_mph);
  put("gamma_g_per_kj", c.gamma_g_per_kj);
  put("av_kj_per_mile", c.av_kj_per_mile);
  put("mm_kj_per_mile", c.mm_kj_per_mile);
  return {{"scenario", c.scenario},
          {"grid",
           {{"av_fleets", c.grid.av_fleets},
            {"mm_fleets", c.grid.mm_fleets},
            {"subway_levels", c.grid.subway_levels}}},
          {"params", params}};
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("SHA-256 failed");
  }
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

ScenarioConfig parse_config(const std::string& text, const std::string& base_dir) {
  const json j = detail::parse_json(text, "config");
  detail::only_fields(j, {"network", "demand", "catalog", "grid", "params", "solver", "output_dir"},
                      "config");
  ScenarioConfig c;
  c.network_path = resolve(base_dir, detail::string(j, "network", "config"));
  c.demand_path = resolve(base_dir, detail::string(j, "demand", "config"));

  const json& cat = detail::field(j, "catalog", "config");
  detail::only_fields(cat, {"file", "scenario"}, "catalog");
  c.catalog_path = resolve(base_dir, detail::string(cat, "file", "catalog"));
  c.scenario = detail::string(cat, "scenario", "catalog");

  const json& grid = detail::field(j, "grid", "config");
  detail::only_fields(grid, {"av_fleets", "mm_fleets", "subway_levels"}, "grid");
  c.grid.av_fleets = parse_grid_axis(detail::field(grid, "av_fleets", "grid"), "grid.av_fleets");
  if (auto mm = grid.find("mm_fleets"); mm != grid.end())
    c.grid.mm_fleets = parse_grid_axis(*mm, "grid.mm_fleets");
  c.grid.subway_levels =
      parse_grid_axis(detail::field(grid, "subway_levels", "grid"), "grid.subway_levels");

  if (auto p = j.find("params"); p != j.end()) {
    detail::only_fields(*p, {"beta", "walk_speed_mph", "gamma_g_per_kj", "av_kj_per_mile",
                             "mm_kj_per_mile", "hours_per_month", "emission_price_usd_per_kg"},
                        "params");
    c.beta = detail::opt_number(*p, "beta", "params");
    c.walk_speed_mph = detail::opt_number(*p, "walk_speed_mph", "params");
    c.gamma_g_per_kj = detail::opt_number(*p, "gamma_g_per_kj", "params");
    c.av_kj_per_mile = detail::opt_number(*p, "av_kj_per_mile", "params");
    c.mm_kj_per_mile = detail::opt_number(*p, "mm_kj_per_mile", "params");
    c.hours_per_month =
        detail::opt_number(*p, "hours_per_month", "params").value_or(c.hours_per_month);
    c.emission_price_usd_per_kg = detail::opt_number(*p, "emission_price_usd_per_kg", "params")
                                      .value_or(c.emission_price_usd_per_kg);
  }
  check_range(c.beta, 0.0, 1.0, true, "beta");
  check_range(c.walk_speed_mph, 0.0, 100.0, true, "walk_speed_mph");
  check_range(c.gamma_g_per_kj, 0.0, 1e6, false, "gamma_g_per_kj");
  check_range(c.av_kj_per_mile, 0.0, 1e9, false, "av_kj_per_mile");
  check_range(c.mm_kj_per_mile, 0.0, 1e9, false, "mm_kj_per_mile");
  check_range(c.hours_per_month, 0.0, 744.0, true, "hours_per_month");
  check_range(c.emission_price_usd_per_kg, 0.0, 1e9, false, "emission_price_usd_per_kg");

  if (auto s = j.find("solver"); s != j.end()) {
    detail::only_fields(*s, {"jobs", "dump_lp", "feasibility_tolerance", "optimality_tolerance"},
                        "solver");
    if (auto jobs = s->find("jobs"); jobs != s->end()) {
      if (!jobs->is_number_integer() || jobs->get<long>() < 1 || jobs->get<long>() > 1024)
        throw ConfigError("solver.jobs must be an integer in [1, 1024]");
      c.jobs = jobs->get<int>();
    }
    if (auto d = s->find("dump_lp"); d != s->end()) {
      if (!d->is_boolean()) throw ConfigError("solver.dump_lp must be a boolean");
      c.dump_lp = d->get<bool>();
    }
    c.feasibility_tolerance = detail::opt_number(*s, "feasibility_tolerance", "solver")
                                  .value_or(c.feasibility_tolerance);
    c.optimality_tolerance = detail::opt_number(*s, "optimality_tolerance", "solver")
                                 .value_or(c.optimality_tolerance);
    check_range(c.feasibility_tolerance, 0.0, 1e-3, true, "feasibility_tolerance");
    check_range(c.optimality_tolerance, 0.0, 1e-3, true, "optimality_tolerance");
  }
  c.output_dir = resolve(base_dir, j.contains("output_dir")
                                       ? detail::string(j, "output_dir", "config")
                                       : std::string("results"));
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  const std::string text = detail::read_file(path);
  ScenarioConfig c;
  try {
    c = parse_config(text, fs::path(path).parent_path().string());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
  c.source = path;
  return c;
}

Scenario load_scenario(const ScenarioConfig& c) {
  const std::string net_text = detail::read_file(c.network_path);
  const std::string demand_text = detail::read_file(c.demand_path);
  const std::string catalog_text = detail::read_file(c.catalog_path);

  auto sys = std::make_shared<mobility::MobilitySystem>();
  try {
    sys->network = network::parse_network(net_text);
  } catch (const ConfigError& e) {
    throw ConfigError(c.network_path + ": " + e.what());
  }
  try {
    sys->demand = network::parse_demand(demand_text, sys->network);
  } catch (const ConfigError& e) {
    throw ConfigError(c.demand_path + ": " + e.what());
  }
  catalog::CatalogFile cat;
  try {
    cat = catalog::parse_catalog(catalog_text);
  } catch (const ConfigError& e) {
    throw ConfigError(c.catalog_path + ": " + e.what());
  }
  sys->av = catalog::av_catalog(cat, c.scenario);
  sys->mm = catalog::mm_catalog(cat, c.scenario);
  sys->subway = cat.subway;
  sys->train_emissions_kg_per_year = cat.train_emissions_kg_per_year;
  sys->grid = c.grid;
  if (!sys->mm) sys->grid.mm_fleets.clear();
  else if (sys->grid.mm_fleets.empty())
    throw ConfigError("scenario '" + c.scenario + "' has micromobility but grid.mm_fleets is empty");
  sys->hours_per_month = c.hours_per_month;
  if (c.beta) sys->params.beta = *c.beta;
  if (c.walk_speed_mph) sys->params.walk_speed_mph = *c.walk_speed_mph;
  if (c.gamma_g_per_kj) sys->energy.gamma_g_per_kj = *c.gamma_g_per_kj;
  if (c.av_kj_per_mile)
    for (auto& [bucket, rate] : sys->energy.av_kj_per_mile) rate = *c.av_kj_per_mile;
  if (c.mm_kj_per_mile) sys->energy.mm_kj_per_mile = *c.mm_kj_per_mile;
  sys->energy.train_emissions_kg_per_year = sys->train_emissions_kg_per_year;
  sys->validate();

  auto part = [](const char* tag, const std::string& bytes) {
    return std::string(tag) + "\n" + std::to_string(bytes.size()) + "\n" + bytes + "\n";
  };
  Scenario s;
  s.config = c;
  s.system = std::move(sys);
  s.input_digest = sha256_hex(part("network", net_text) + part("demand", demand_text) +
                              part("catalog", catalog_text) +
                              part("settings", settings_json(c).dump()));
  return s;
}

std::size_t ResultSet::failures() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const auto& p) {
    return p.status != flow::FlowStatus::Optimal;
  }));
}

ResultSet run(const Scenario& scenario, const RunOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const mobility::MobilitySystem& sys = *scenario.system;

  lp::SimplexOptions simplex;
  simplex.feasibility_tolerance = scenario.config.feasibility_tolerance;
  simplex.optimality_tolerance = scenario.config.optimality_tolerance;
  const lp::RevisedSimplex solver(simplex);
  auto cache = std::make_shared<mobility::FlowCache>(&solver);
  if (!options.lp_dump_dir.empty()) {
    fs::create_directories(options.lp_dump_dir);
    const fs::path dir = options.lp_dump_dir;
    cache->set_lp_observer([dir](const mobility::FlowKey& key, const lp::LinearProgram& lp) {
      const std::string name = file_tag(mobility::to_string(key));
      write_text(dir / (name + ".lp"), lp::to_lp_format(lp, name));
    });
  }

  const std::vector<mobility::DesignPoint> points = sys.design_points();
  std::set<mobility::FlowKey> key_set;
  for (const auto& p : points) key_set.insert(mobility::flow_key(sys, p));
  const std::vector<mobility::FlowKey> keys(key_set.begin(), key_set.end());

  std::vector<std::exception_ptr> errors(keys.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < keys.size(); i = next++) {
      try {
        cache->get(sys, keys[i], sys.demand);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, options.jobs)), keys.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ResultSet out;
  out.input_digest = scenario.input_digest;
  for (const auto& p : points) {
    PointResult r;
    r.point = p;
    r.key = mobility::flow_key(sys, p);
    auto sol = cache->get(sys, r.key, sys.demand);
    r.status = sol->status;
    r.message = sol->message;
    if (sol->status == flow::FlowStatus::Optimal) r.resources = mobility::total_resources(*sol, p, sys);
    out.points.push_back(std::move(r));
  }

  const codesign::CoDesignDiagram diagram = mobility::build_mobility_cdpi(scenario.system, cache);
  for (const auto& rec :
       codesign::solve_diagram(diagram, mobility::demand_point(sys, sys.demand))) {
    FrontRow row;
    row.resources = {rec.resources[0].value(), rec.resources[1].value(),
                     rec.resources[2].value()};
    row.design = mobility::design_of(diagram, rec);
    out.front3d.push_back(std::move(row));
  }

  std::vector<Front2dRow> projected;
  for (const auto& row : out.front3d) {
    const auto m = mobility::monetize_2d(row.resources, scenario.config.emission_price_usd_per_kg);
    projected.push_back({m.t_avg_s, m.cost_2d, row.design});
  }
  for (std::size_t i = 0; i < projected.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < projected.size() && keep; ++j) {
      if (i == j) continue;
      const auto& a = projected[i];
      const auto& b = projected[j];
      const bool weakly = b.t_avg_s <= a.t_avg_s && b.cost_2d <= a.cost_2d;
      const bool equal = b.t_avg_s == a.t_avg_s && b.cost_2d == a.cost_2d;
      if (weakly && (!equal || j < i)) keep = false;
    }
    if (keep) out.front2d.push_back(projected[i]);
  }
  std::stable_sort(out.front2d.begin(), out.front2d.end(),
                   [](const Front2dRow& a, const Front2dRow& b) { return a.cost_2d < b.cost_2d; });

  out.lp_solves = cache->size();
  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

void write_results(const Scenario& scenario, const ResultSet& r, const std::string& dir_name) {
  const fs::path dir = dir_name;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  const mobility::MobilitySystem& sys = *scenario.system;

  std::string f3 = std::string("t_avg_s,cost_usd_per_month,co2_kg_per_month,") + kDesignHeader + "\n";
  json front3d = json::array();
  for (const auto& row : r.front3d) {
    f3 += fmt6(row.resources.t_avg_s) + "," + fmt6(row.resources.cost_usd_per_month) + "," +
          fmt6(row.resources.co2_kg_per_month) + "," + design_csv(row.design) + "\n";
    front3d.push_back({{"t_avg_s", row.resources.t_avg_s},
                       {"cost_usd_per_month", row.resources.cost_usd_per_month},
                       {"co2_kg_per_month", row.resources.co2_kg_per_month},
                       {"design", design_json(row.design)}});
  }
  std::string f2 = std::string("t_avg_s,cost_2d_usd_per_month,") + kDesignHeader + "\n";
  json front2d = json::array();
  for (const auto& row : r.front2d) {
    f2 += fmt6(row.t_avg_s) + "," + fmt6(row.cost_2d) + "," + design_csv(row.design) + "\n";
    front2d.push_back({{"t_avg_s", row.t_avg_s},
                       {"cost_2d_usd_per_month", row.cost_2d},
                       {"design", design_json(row.design)}});
  }
  std::string all = std::string("index,") + kDesignHeader +
                    ",status,t_avg_s,cost_usd_per_month,co2_kg_per_month\n";
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const PointResult& p = r.points[i];
    all += std::to_string(i) + "," + design_csv(design_of_point(sys, p.point)) + "," +
           flow::to_string(p.status) + ",";
    if (p.status == flow::FlowStatus::Optimal)
      all += fmt6(p.resources.t_avg_s) + "," + fmt6(p.resources.cost_usd_per_month) + "," +
             fmt6(p.resources.co2_kg_per_month);
    else
      all += ",,";
    all += "\n";
  }

  const ScenarioConfig& c = scenario.config;
  auto input = [](const std::string& path) {
    return json{{"file", fs::path(path).filename().string()},
                {"sha256", sha256_hex(detail::read_file(path))}};
  };
  json manifest = {
      {"tool", "mobco"},
      {"version", MOBCO_VERSION},
      {"json_library", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
      {"input_digest", r.input_digest},
      {"inputs",
       {{"network", input(c.network_path)},
        {"demand", input(c.demand_path)},
        {"catalog", input(c.catalog_path)}}},
      {"settings", settings_json(c)},
      {"counts",
       {{"design_points", r.points.size()},
        {"lp_solves", r.lp_solves},
        {"failures", r.failures()},
        {"front3d", r.front3d.size()},
        {"front2d", r.front2d.size()}}},
      {"front3d", front3d},
      {"front2d", front2d}};
  json runtime = {{"seconds", r.seconds}, {"lp_solves", r.lp_solves}};

  write_text(dir / "front3d.csv", f3);
  write_text(dir / "front2d.csv", f2);
  write_text(dir / "all_points.csv", all);
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  write_text(dir / "runtime.json", runtime.dump(2) + "\n");
}

std::vector<std::pair<double, double>> staircase(std::vector<std::pair<double, double>> front) {
  std::sort(front.begin(), front.end());
  for (std::size_t i = 1; i < front.size(); ++i)
    if (!(front[i].first > front[i - 1].first && front[i].second < front[i - 1].second))
      throw std::invalid_argument("staircase: points are not a cost-time antichain");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < front.size(); ++i) {
    if (i > 0) out.emplace_back(front[i].first, front[i - 1].second);
    out.push_back(front[i]);
  }
  return out;
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const ScenarioConfig c = load_config(path);
    const Scenario s = load_scenario(c);
    const network::ValidationReport report = network::validate_network(s.system->network);
    if (!report.ok()) {
      for (const auto& f : report.failures) err << "network: " << f.message << "\n";
      return 1;
    }
    out << "ok: " << s.system->network.nodes().size() << " nodes, "
        << s.system->network.arcs().size() << " arcs, " << s.system->demand.requests.size()
        << " requests, " << s.system->design_points().size() << " design points\n";
    return 0;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "invalid: " << e.what() << "\n";
    return 1;
  }
}

int cmd_solve(const std::string& path, const CliOverrides& o, std::ostream& out,
              std::ostream& err) {
  try {
    ScenarioConfig c = load_config(path);
    if (o.emission_price) {
      if (!(*o.emission_price >= 0.0) || !std::isfinite(*o.emission_price))
        throw ConfigError("--emission-price must be >= 0");
      c.emission_price_usd_per_kg = *o.emission_price;
    }
    if (o.hours_per_month) {
      if (!(*o.hours_per_month > 0.0 && *o.hours_per_month <= 744.0))
        throw ConfigError("--hours-per-month must be in (0, 744]");
      c.hours_per_month = *o.hours_per_month;
    }
    if (o.jobs) {
      if (*o.jobs < 1) throw ConfigError("--jobs must be >= 1");
      c.jobs = *o.jobs;
    }
    if (o.dump_lp) c.dump_lp = true;
    if (o.output_dir) c.output_dir = *o.output_dir;

    const Scenario s = load_scenario(c);
    const network::ValidationReport report = network::validate_network(s.system->network);
    if (!report.ok()) {
      for (const auto& f : report.failures) err << "network: " << f.message << "\n";
      return 1;
    }
    RunOptions ro;
    ro.jobs = c.jobs;
    if (c.dump_lp) ro.lp_dump_dir = (fs::path(c.output_dir) / "lp").string();
    const ResultSet r = run(s, ro);
    write_results(s, r, c.output_dir);
    for (std::size_t i = 0; i < r.points.size(); ++i)
      if (r.points[i].status != flow::FlowStatus::Optimal)
        err << "point " << i << " (" << mobility::to_string(r.points[i].key)
            << "): " << flow::to_string(r.points[i].status) << " " << r.points[i].message << "\n";
    out << r.points.size() << " design points, " << r.lp_solves << " routing problems, "
        << r.failures() << " failed, front " << r.front3d.size() << " (3D) / "
        << r.front2d.size() << " (2D), written to " << c.output_dir << "\n";
    return r.failures() == r.points.size() ? 1 : 0;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "invalid: " << e.what() << "\n";
    return 1;
  }
}

int cmd_plot_data(const std::string& dir_name, std::ostream& out, std::ostream& err) {
  try {
    const fs::path dir = dir_name;
    const json manifest =
        detail::parse_json(detail::read_file((dir / "manifest.json").string()), "manifest");
    std::vector<std::pair<double, double>> front;
    for (const json& row : detail::field(manifest, "front2d", "manifest"))
      front.emplace_back(detail::number(row, "cost_2d_usd_per_month", "front2d"),
                         detail::number(row, "t_avg_s", "front2d"));
    if (front.empty()) {
      err << "error: the 2D front is empty\n";
      return 1;
    }
    std::string csv = "cost_2d_usd_per_month,t_avg_s\n";
    for (const auto& [cost, t] : staircase(front)) csv += fmt6(cost) + "," + fmt6(t) + "\n";
    write_text(dir / "staircase.csv", csv);
    out << front.size() << " front points, staircase written to "
        << (dir / "staircase.csv").string() << "\n";
    return 0;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "invalid: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mobco::scenario
