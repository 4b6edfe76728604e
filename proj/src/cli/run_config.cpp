#include <charconv>
#include <cmath>
#include <string>

#include "eqgirth/cli.hpp"
#include "eqgirth/errors.hpp"
#include "eqgirth/girth_opt.hpp"
#include "eqgirth/perturbation.hpp"

namespace eqgirth::cli {

namespace {

double parse_real(std::string_view text, std::string_view whole) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("cannot parse number '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

double parse_fraction(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_real(text, text);
  const double p = parse_real(text.substr(0, slash), text);
  const double q = parse_real(text.substr(slash + 1), text);
  if (q == 0.0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
  return p / q;
}

std::string_view to_string(PipeSlack mode) {
  return mode == PipeSlack::two_delta ? "two_delta" : "one_delta";
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

void validate(const RunConfig& c) {
  if (!(c.delta > 0.0 && c.delta <= kMaxDelta)) {
    throw ConfigError("--delta must lie in (0, 0.1]");
  }
  if (!(c.eps > 0.0 && c.eps < kPi / 4)) {
    throw ConfigError("--eps must lie in (0, pi/4)");
  }
  if (!(c.resolution >= 1e-4 && c.resolution <= 1e-1)) {
    throw ConfigError("--resolution must lie in [1e-4, 1e-1]");
  }
  if (c.grid_theta < kMinDiameterGrid || c.grid_phi < kMinDiameterGrid) {
    throw ConfigError("--grid-theta and --grid-phi must be at least 32");
  }
  if (c.perturb_r < 1 || c.perturb_s < 1) {
    throw ConfigError("--r and --s must be positive integers");
  }
  if (!(c.perturb_amplitude > 0.0 && c.perturb_amplitude <= GraphPerturbation::kMaxAmplitude)) {
    throw ConfigError("perturbation amplitude must lie in (0, 0.1]");
  }
}

nlohmann::ordered_json config_to_json(const RunConfig& c) {
  return {
      {"delta", c.delta},
      {"eps", c.eps},
      {"resolution", c.resolution},
      {"resolution_text", c.resolution_text},
      {"grid_theta", c.grid_theta},
      {"grid_phi", c.grid_phi},
      {"pipe_slack", std::string(to_string(c.pipe_slack))},
      {"format", std::string(to_string(c.format))},
      {"seed", c.seed},
      {"refine", c.refine},
      {"perturb", {{"r", c.perturb_r}, {"s", c.perturb_s}, {"amplitude", c.perturb_amplitude}}},
  };
}

}  // namespace eqgirth::cli
