#pragma once

#include <filesystem>
#include <string_view>

#include "riskmin/scenario_gen.hpp"

namespace riskmin {

// Flat key=value scenario file. '#' starts a comment, blank lines are skipped,
// return_grid is a comma-separated list. Required keys:
//   n_assets, n_periods, cost_coefficient, return_grid,
//   pareto_r_exponent, pareto_r_lower, pareto_r_upper,
//   pareto_h_exponent, pareto_h_lower, pareto_h_upper,
//   n_trials, master_seed
// Unknown or duplicate keys, missing keys, and malformed values all throw
// ConfigError naming the file and line; the result is validated before return.
ScenarioConfig parse_config(const std::filesystem::path& path);

// Same grammar from an in-memory buffer; source_name only labels diagnostics.
ScenarioConfig parse_config_text(std::string_view text, std::string_view source_name);

}  // namespace riskmin
