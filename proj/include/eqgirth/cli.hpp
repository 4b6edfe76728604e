#pragma once

// Run configuration, report model and subcommand driver behind the
// equator_girth executable.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eqgirth/pipe_model.hpp"

namespace eqgirth::cli {

enum class OutputFormat { json, csv };

struct RunConfig {
  double delta = kDefaultDelta;
  double eps = kDefaultEps;
  double resolution = 1.0 / 120.0;
  std::string resolution_text = "1/120";
  std::size_t grid_theta = 128;
  std::size_t grid_phi = 64;
  PipeSlack pipe_slack = PipeSlack::one_delta;
  OutputFormat format = OutputFormat::json;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "out";
  bool timing = true;
  bool refine = false;

  // perturb
  int perturb_r = 2;
  int perturb_s = 3;
  double perturb_amplitude = 0.05;
};

// "0.25", "1/120", "-3/4". Throws ConfigError on anything else.
double parse_fraction(std::string_view text);

std::string_view to_string(PipeSlack mode);
std::string_view to_string(OutputFormat format);

// Throws ConfigError naming the first field outside its accepted range.
void validate(const RunConfig& config);

nlohmann::ordered_json config_to_json(const RunConfig& config);

inline const std::vector<std::string_view> kSubcommands{
    "bounds", "optimize", "case-split", "diameter", "perturb", "winding", "all"};

struct CheckResult {
  std::string name;
  nlohmann::ordered_json value;
  nlohmann::ordered_json expected;
  // How value is compared with expected: "==", "<=", "<" (with tolerance
  // as margin), or "recorded" for a status reported together with witnesses.
  std::string relation = "==";
  double tolerance = 0.0;
  bool pass = false;
  std::string paper_ref;  // the claim the check reproduces
};

struct Report {
  std::string subcommand;
  nlohmann::ordered_json config;
  std::vector<CheckResult> results;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();  // witnesses, argmax lists
  double wall_time_ms = 0.0;

  bool all_pass() const;
};

// JSON text with every floating value printed to 17 significant digits.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);
nlohmann::ordered_json report_to_json(const Report& report);

// A named table for external plotting: header row plus rows in row-major
// grid order.
struct CsvTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
std::string dump_csv(const CsvTable& table);

struct RunOutput {
  Report report;
  std::vector<CsvTable> tables;
};

// Runs one subcommand without touching the filesystem. Module errors become
// failing results; ConfigError propagates.
RunOutput execute(std::string_view subcommand, const RunConfig& config);

enum ExitCode : int { kExitPass = 0, kExitCheckFailure = 1, kExitConfigError = 2 };

// execute + write <out>/<subcommand>.json (and <out>/<table>.csv for the csv
// format) + one status line per result on `log`. Returns an ExitCode.
int run(std::string_view subcommand, const RunConfig& config, std::ostream& log);

}  // namespace eqgirth::cli
