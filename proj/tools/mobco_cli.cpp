#include <CLI11.hpp>

#include <iostream>

#include "mobco/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mobco: intermodal mobility co-design"};
  app.require_subcommand(1);

  std::string config;
  auto* validate = app.add_subcommand("validate", "check a scenario config without solving");
  validate->add_option("config", config, "scenario config file")->required();

  mobco::scenario::CliOverrides over;
  int jobs = 1;
  double price = 40.0;
  double hours = 730.0;
  std::string output;
  auto* solve = app.add_subcommand("solve", "solve a scenario and write result files");
  solve->add_option("config", config, "scenario config file")->required();
  auto* jobs_opt = solve->add_option("--jobs,-j", jobs, "worker threads")->check(CLI::PositiveNumber);
  solve->add_flag("--dump-lp", over.dump_lp, "write every routing LP in LP format under <output>/lp");
  auto* price_opt = solve->add_option("--emission-price", price, "USD per kg CO2 for the 2D front")
                        ->check(CLI::NonNegativeNumber);
  auto* hours_opt = solve->add_option("--hours-per-month", hours, "operating hours per month")
                        ->check(CLI::PositiveNumber);
  auto* output_opt = solve->add_option("--output,-o", output, "result directory");

  std::string results;
  auto* plot = app.add_subcommand("plot-data", "staircase coordinates of a solved 2D front");
  plot->add_option("results-dir", results, "directory written by solve")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*validate) return mobco::scenario::cmd_validate(config, std::cout, std::cerr);
  if (*solve) {
    if (*jobs_opt) over.jobs = jobs;
    if (*price_opt) over.emission_price = price;
    if (*hours_opt) over.hours_per_month = hours;
    if (*output_opt) over.output_dir = output;
    return mobco::scenario::cmd_solve(config, over, std::cout, std::cerr);
  }
  return mobco::scenario::cmd_plot_data(results, std::cout, std::cerr);
}
