#include <charconv>
#include <cmath>

#include "detail/json.hpp"
#include "mobco/catalog.hpp"

namespace mobco::catalog {

using detail::json;

namespace {

double parse_key(const std::string& key, const std::string& where) {
  double v = 0.0;
  auto res = std::from_chars(key.data(), key.data() + key.size(), v);
  if (res.ec != std::errc() || res.ptr != key.data() + key.size() || !std::isfinite(v))
    throw ConfigError(where + ": key '" + key + "' is not a number");
  return v;
}

std::map<double, double> numeric_table(const json& obj, const std::string& where) {
  if (!obj.is_object() || obj.empty()) throw ConfigError(where + ": expected a non-empty table");
  std::map<double, double> out;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!it->is_number()) throw ConfigError(where + ": value of '" + it.key() + "' is not a number");
    if (!out.emplace(parse_key(it.key(), where), it->get<double>()).second)
      throw ConfigError(where + ": duplicate key '" + it.key() + "'");
  }
  return out;
}

AvTable parse_av(const json& j, const std::string& where) {
  detail::only_fields(j, {"op_cost_usd_per_mile", "vehicle_cost_usd", "life_years",
                          "automation_cost_usd_by_speed_mph"},
                      where);
  AvTable t;
  t.op_cost_usd_per_mile = detail::number(j, "op_cost_usd_per_mile", where);
  t.vehicle_cost_usd = detail::number(j, "vehicle_cost_usd", where);
  t.life_years = detail::opt_number(j, "life_years", where).value_or(5.0);
  t.automation_cost_usd_by_speed_mph = numeric_table(
      detail::field(j, "automation_cost_usd_by_speed_mph", where), where + ".automation");
  return t;
}

mobility::VehicleEntry parse_mm(const json& j, const std::string& where) {
  detail::only_fields(j, {"id", "speed_mph", "fixed_cost_usd", "op_cost_usd_per_mile",
                          "life_years", "emissions_kg_per_mile"},
                      where);
  mobility::VehicleEntry e;
  e.id = detail::string(j, "id", where);
  e.speed_mph = detail::number(j, "speed_mph", where);
  e.fixed_cost_usd = detail::number(j, "fixed_cost_usd", where);
  e.op_cost_usd_per_mile = detail::number(j, "op_cost_usd_per_mile", where);
  e.life_years = detail::number(j, "life_years", where);
  e.emissions_kg_per_mile = detail::number(j, "emissions_kg_per_mile", where);
  return e;
}

mobility::SubwayDesign parse_subway(const json& j, double& train_emissions) {
  const std::string where = "subway";
  detail::only_fields(j, {"baseline_trains", "fixed_cost_usd_per_train", "life_years",
                          "op_cost_usd_per_year_by_level", "baseline_frequency_per_min",
                          "emissions_kg_per_train_year"},
                      where);
  mobility::SubwayDesign d;
  d.baseline_trains = detail::number(j, "baseline_trains", where);
  d.fixed_cost_usd_per_train = detail::number(j, "fixed_cost_usd_per_train", where);
  d.life_years = detail::number(j, "life_years", where);
  d.op_cost_usd_per_year_by_level =
      numeric_table(detail::field(j, "op_cost_usd_per_year_by_level", where), where + ".op_cost");
  d.baseline_frequency_per_min = detail::number(j, "baseline_frequency_per_min", where);
  train_emissions = detail::number(j, "emissions_kg_per_train_year", where);
  d.validate();
  return d;
}

std::string speed_label(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::vector<std::string> CatalogFile::scenario_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : scenarios) out.push_back(name);
  return out;
}

const ScenarioEntry& CatalogFile::scenario(const std::string& name) const {
  auto it = scenarios.find(name);
  if (it == scenarios.end()) throw ConfigError("catalog has no scenario '" + name + "'");
  return it->second;
}

CatalogFile parse_catalog(const std::string& text) {
  const json j = detail::parse_json(text, "catalog");
  detail::only_fields(j, {"scenarios", "mm_types", "subway"}, "catalog");
  CatalogFile out;

  const json& scenarios = detail::field(j, "scenarios", "catalog");
  if (!scenarios.is_object() || scenarios.empty())
    throw ConfigError("catalog: 'scenarios' must be a non-empty object");
  for (auto it = scenarios.begin(); it != scenarios.end(); ++it) {
    const std::string where = "scenario '" + it.key() + "'";
    detail::only_fields(*it, {"av", "micromobility"}, where);
    ScenarioEntry s;
    s.av = parse_av(detail::field(*it, "av", where), where + ".av");
    if (auto mm = it->find("micromobility"); mm != it->end()) {
      if (!mm->is_boolean()) throw ConfigError(where + ": 'micromobility' must be a boolean");
      s.micromobility = mm->get<bool>();
    }
    out.scenarios.emplace(it.key(), std::move(s));
  }

  if (auto mm = j.find("mm_types"); mm != j.end()) {
    if (!mm->is_array()) throw ConfigError("catalog: 'mm_types' must be an array");
    for (std::size_t i = 0; i < mm->size(); ++i)
      out.mm_types.push_back(parse_mm((*mm)[i], "mm_types[" + std::to_string(i) + "]"));
  }
  if (auto sub = j.find("subway"); sub != j.end())
    out.subway = parse_subway(*sub, out.train_emissions_kg_per_year);

  for (const auto& [name, s] : out.scenarios) {
    if (s.micromobility && out.mm_types.empty())
      throw ConfigError("scenario '" + name + "' uses micromobility but no mm_types are given");
    av_catalog(out, name).validate();
  }
  if (!out.mm_types.empty()) mobility::VehicleCatalog{"mm", out.mm_types}.validate();
  return out;
}

CatalogFile load_catalog(const std::string& path) {
  try {
    return parse_catalog(detail::read_file(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

mobility::VehicleCatalog av_catalog(const CatalogFile& file, const std::string& name) {
  const ScenarioEntry& s = file.scenario(name);
  mobility::VehicleCatalog c;
  c.name = name;
  for (const auto& [speed, automation] : s.av.automation_cost_usd_by_speed_mph) {
    mobility::VehicleEntry e;
    e.id = name + "@" + speed_label(speed) + "mph";
    e.speed_mph = speed;
    e.fixed_cost_usd = s.av.vehicle_cost_usd + automation;
    e.op_cost_usd_per_mile = s.av.op_cost_usd_per_mile;
    e.life_years = s.av.life_years;
    e.attributes = {{"scenario", name},
                    {"vehicle_cost_usd", speed_label(s.av.vehicle_cost_usd)},
                    {"automation_cost_usd", speed_label(automation)}};
    c.entries.push_back(std::move(e));
  }
  return c;
}

std::optional<mobility::VehicleCatalog> mm_catalog(const CatalogFile& file,
                                                   const std::string& name) {
  if (!file.scenario(name).micromobility) return std::nullopt;
  return mobility::VehicleCatalog{"mm", file.mm_types};
}

}  // namespace mobco::catalog
