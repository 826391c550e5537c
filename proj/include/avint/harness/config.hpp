/**
 * @file config.hpp
 * @brief Flat key=value experiment configuration.
 */
#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace avint {

struct ExperimentConfig {
  std::string problem;          // kepler | kovalevskaya | engine | bbm
  std::string scheme = "ours";  // ours | im | gauss | mvdg
  int stages = 1;
  double dt = 0.1;
  double t_final = 1.0;
  std::string quad = "gauss";  // gauss | exact
  int quad_ref_stages = 12;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  std::string output;

  // engine
  int engine_cylinders = 6;
  double engine_mean_volume = 1.0 + 1.0 / 16.0;
  double engine_heat_capacity = 2.5;
  double engine_env_temperature = 1.0;
  double engine_omega0 = 8.0;
  std::string engine_initial = "equilibrium";  // equilibrium | reflected

  // bbm
  int bbm_cells = 50;
  double bbm_left = -50.0;
  double bbm_right = 50.0;
  std::vector<double> snapshots;

  // convergence study
  std::vector<int> stages_list{1, 2, 3, 4};
  int k_min = 5;
  int k_max = 12;

  /// Throws ParameterError on an invalid combination.
  void validate() const;
};

/// Parses a number, accepting the forms "0.25", "1e-3", "2^-4" and "1+2^-4".
[[nodiscard]] double parse_number(const std::string& text);

/// Sets one key; throws ParameterError for an unknown key or malformed value.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Reads "key = value" lines; '#' starts a comment.
[[nodiscard]] ExperimentConfig parse_config(std::istream& in);
[[nodiscard]] ExperimentConfig load_config(const std::string& path);

using Settings = std::vector<std::pair<std::string, std::string>>;

/// Raw key/value pairs of a config file, in file order.
[[nodiscard]] Settings read_settings(std::istream& in);
[[nodiscard]] Settings read_settings_file(const std::string& path);

/**
 * @brief Builds one config per combination when `scheme` or `stages` hold comma-separated lists.
 *
 * Later settings win, so overrides appended to `settings` replace file values. Expanded runs
 * write to "<output stem>_<scheme>_s<stages>.csv".
 */
[[nodiscard]] std::vector<ExperimentConfig> expand_settings(const Settings& settings);

/// Output path after applying the AVINT_OUTPUT_DIR override, if set.
[[nodiscard]] std::string resolve_output_path(const ExperimentConfig& config);

}  // namespace avint
