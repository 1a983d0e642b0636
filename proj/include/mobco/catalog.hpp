#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mobco/mobility.hpp"

namespace mobco::catalog {

/// AV cost table of one scenario: automation cost by achievable speed on
/// top of a common vehicle cost.
struct AvTable {
  double op_cost_usd_per_mile = 0.0;
  double vehicle_cost_usd = 0.0;
  double life_years = 5.0;
  std::map<double, double> automation_cost_usd_by_speed_mph;
};

struct ScenarioEntry {
  AvTable av;
  bool micromobility = false;
};

/// Contents of a catalog file: scenarios, micromobility types, subway.
struct CatalogFile {
  std::map<std::string, ScenarioEntry> scenarios;
  std::vector<mobility::VehicleEntry> mm_types;
  mobility::SubwayDesign subway;
  double train_emissions_kg_per_year = 140000.0;

  std::vector<std::string> scenario_names() const;
  /// Throws ConfigError for an unknown scenario name.
  const ScenarioEntry& scenario(const std::string& name) const;
};

CatalogFile parse_catalog(const std::string& json_text);
/// Throws IoError when unreadable, ConfigError when malformed.
CatalogFile load_catalog(const std::string& path);

/// One AV entry per tabulated speed, ids "<scenario>@<speed>mph".
mobility::VehicleCatalog av_catalog(const CatalogFile& file, const std::string& scenario);
/// The micromobility types when the scenario includes them.
std::optional<mobility::VehicleCatalog> mm_catalog(const CatalogFile& file,
                                                   const std::string& scenario);

}  // namespace mobco::catalog
