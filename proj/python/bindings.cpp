#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mobco/catalog.hpp"
#include "mobco/errors.hpp"
#include "mobco/mobility.hpp"
#include "mobco/poset.hpp"
#include "mobco/scenario.hpp"

namespace py = pybind11;
using namespace mobco;

namespace {

py::dict design_dict(const mobility::RecordDesign& d) {
  py::dict out;
  out["av_entry"] = d.av_entry;
  out["av_speed_mph"] = d.av_speed_mph;
  out["n_v_max"] = d.n_v_max;
  out["mm_entry"] = d.mm_entry;
  out["mm_speed_mph"] = d.mm_speed_mph;
  out["n_m_max"] = d.n_m_max;
  out["subway_level"] = d.subway_level;
  return out;
}

// Runs a command with captured streams: (exit code, stdout, stderr).
template <class F>
py::tuple captured(F&& f) {
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = f(out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "mobco core bindings";
  m.attr("__version__") = MOBCO_VERSION;

  m.def(
      "pareto_min",
      [](const std::vector<std::vector<double>>& points) {
        if (points.empty()) return std::vector<std::vector<double>>{};
        std::vector<poset::Point> pts;
        for (const auto& p : points) pts.push_back(poset::Point::of(p));
        const poset::Antichain min = poset::pareto_min(points.front().size(), pts);
        std::vector<std::vector<double>> out;
        for (const auto& p : min.points()) {
          std::vector<double> row;
          for (const auto& c : p) row.push_back(c.is_top() ? INFINITY : c.value());
          out.push_back(std::move(row));
        }
        return out;
      },
      py::arg("points"), "Minimal points under the coordinate-wise order, sorted.");

  m.def(
      "subway_cost",
      [](double level) { return mobility::subway_cost(mobility::SubwayDesign{}, level); },
      py::arg("level"), "Subway cost in USD per month at a service level of 1, 1.5 or 2.");

  m.def(
      "monetize_2d",
      [](double t, double cost, double co2, double price) {
        const auto r = mobility::monetize_2d({t, cost, co2}, price);
        return py::make_tuple(r.t_avg_s, r.cost_2d);
      },
      py::arg("t_avg_s"), py::arg("cost_usd_per_month"), py::arg("co2_kg_per_month"),
      py::arg("price_usd_per_kg") = mobility::kDefaultEmissionPrice);

  m.def(
      "av_query",
      [](const std::string& catalog_path, const std::string& scenario, double speed) {
        const auto file = catalog::load_catalog(catalog_path);
        const auto dp = mobility::av_problem(catalog::av_catalog(file, scenario));
        py::list out;
        for (const auto& c : dp.query(poset::Point{speed})) {
          py::dict d;
          d["fixed_cost_usd"] = c.resources[0].value();
          d["op_cost_usd_per_mile"] = c.resources[1].value();
          d["entry"] = c.provenance.front().implementation;
          out.append(d);
        }
        return out;
      },
      py::arg("catalog_path"), py::arg("scenario"), py::arg("speed_mph"),
      "Minimal AV costs achieving the speed.");

  m.def(
      "staircase",
      [](const std::vector<std::pair<double, double>>& front) {
        return scenario::staircase(front);
      },
      py::arg("front"), "Step-plot vertices of (cost, time) points.");

  m.def(
      "validate",
      [](const std::string& config) {
        return captured([&](std::ostream& o, std::ostream& e) {
          return scenario::cmd_validate(config, o, e);
        });
      },
      py::arg("config"));

  m.def(
      "solve",
      [](const std::string& config, std::optional<int> jobs, bool dump_lp,
         std::optional<double> emission_price, std::optional<double> hours_per_month,
         std::optional<std::string> output_dir) {
        scenario::CliOverrides over{jobs, dump_lp, emission_price, hours_per_month, output_dir};
        return captured([&](std::ostream& o, std::ostream& e) {
          return scenario::cmd_solve(config, over, o, e);
        });
      },
      py::arg("config"), py::arg("jobs") = py::none(), py::arg("dump_lp") = false,
      py::arg("emission_price") = py::none(), py::arg("hours_per_month") = py::none(),
      py::arg("output_dir") = py::none());

  m.def(
      "plot_data",
      [](const std::string& dir) {
        return captured([&](std::ostream& o, std::ostream& e) {
          return scenario::cmd_plot_data(dir, o, e);
        });
      },
      py::arg("results_dir"));

  m.def(
      "run",
      [](const std::string& config, int jobs) {
        scenario::ResultSet r;
        scenario::Scenario s;
        {
          py::gil_scoped_release release;
          s = scenario::load_scenario(scenario::load_config(config));
          r = scenario::run(s, {jobs, ""});
        }
        py::list front3d, front2d;
        for (const auto& row : r.front3d) {
          py::dict d;
          d["t_avg_s"] = row.resources.t_avg_s;
          d["cost_usd_per_month"] = row.resources.cost_usd_per_month;
          d["co2_kg_per_month"] = row.resources.co2_kg_per_month;
          d["design"] = design_dict(row.design);
          front3d.append(d);
        }
        for (const auto& row : r.front2d) {
          py::dict d;
          d["t_avg_s"] = row.t_avg_s;
          d["cost_2d_usd_per_month"] = row.cost_2d;
          d["design"] = design_dict(row.design);
          front2d.append(d);
        }
        py::dict out;
        out["input_digest"] = r.input_digest;
        out["design_points"] = r.points.size();
        out["failures"] = r.failures();
        out["lp_solves"] = r.lp_solves;
        out["front3d"] = front3d;
        out["front2d"] = front2d;
        return out;
      },
      py::arg("config"), py::arg("jobs") = 1,
      "Solves a scenario in memory and returns its fronts.");

  py::register_exception<mobco::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<mobco::IoError>(m, "IoError", PyExc_OSError);
}
