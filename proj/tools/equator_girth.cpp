// equator_girth: runs the numerical checks and writes JSON reports.
//
//   equator_girth optimize --resolution 1/120
//   equator_girth perturb --r 2 --s 3 --delta 0.05
//   equator_girth all --out results --no-timing

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "eqgirth/cli.hpp"
#include "eqgirth/errors.hpp"

namespace cli = eqgirth::cli;

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for Hofer girth bounds of great-circle embeddings"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  cli::RunConfig config;
  std::string resolution = config.resolution_text;
  std::string out_dir = config.out_dir.string();

  app.add_option("--delta", config.delta, "pipe area delta in (0, 0.1]");
  app.add_option("--eps", config.eps, "transition width eps in (0, pi/4)");
  app.add_option("--resolution", resolution, "optimizer grid step, e.g. 1/120");
  app.add_option("--grid-theta", config.grid_theta, "diameter grid size in theta");
  app.add_option("--grid-phi", config.grid_phi, "diameter grid size in phi");
  std::string pipe_slack = "one_delta";
  std::string format = "json";
  app.add_option("--pipe-slack", pipe_slack, "one_delta or two_delta")
      ->check(CLI::IsMember({"one_delta", "two_delta"}));
  app.add_option("--format", format, "json or csv (csv also writes the JSON report)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", config.seed, "seed for randomized sampling");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--refine", config.refine, "refine optimizer argmax points");
  bool no_timing = false;
  app.add_flag("--no-timing", no_timing, "report wall_time_ms as 0 for reproducible output");

  const std::map<std::string_view, std::string> about{
      {"bounds", "elementary Hofer bounds and area quadrature calibration"},
      {"optimize", "grid maximum of the cost function F"},
      {"case-split", "audit of the inner and outer case split"},
      {"diameter", "pipe-model bound on the embedding diameter"},
      {"perturb", "intersections and lens areas of two graph perturbations"},
      {"winding", "index of the frame field at the singular point"},
      {"all", "every subcommand above"},
  };
  std::string chosen;
  for (std::string_view name : cli::kSubcommands) {
    CLI::App* sub = app.add_subcommand(std::string(name), about.at(name));
    sub->callback([&chosen, name] { chosen = std::string(name); });
    if (name == "perturb") {
      sub->add_option("--r", config.perturb_r, "frequency of the first graph");
      sub->add_option("--s", config.perturb_s, "frequency of the second graph");
      sub->add_option("--delta", config.perturb_amplitude, "amplitude of both graphs");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitConfigError;
  }

  try {
    config.resolution = cli::parse_fraction(resolution);
  } catch (const eqgirth::ConfigError& e) {
    std::cerr << "error: --resolution: " << e.what() << '\n';
    return cli::kExitConfigError;
  }
  config.resolution_text = resolution;
  config.pipe_slack =
      pipe_slack == "two_delta" ? eqgirth::PipeSlack::two_delta : eqgirth::PipeSlack::one_delta;
  config.format = format == "csv" ? cli::OutputFormat::csv : cli::OutputFormat::json;
  config.out_dir = out_dir;
  config.timing = !no_timing;
  return cli::run(chosen, config, std::cout);
}
