#include "avint/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "avint/core/errors.hpp"

namespace avint {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_plain(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParameterError("not a number: '" + text + "'");
  }
  return value;
}

double parse_power(const std::string& text) {
  const auto caret = text.find('^');
  if (caret == std::string::npos) {
    return parse_plain(text);
  }
  return std::pow(parse_plain(trim(text.substr(0, caret))), parse_plain(trim(text.substr(caret + 1))));
}

int parse_int(const std::string& text) {
  int value = 0;
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParameterError("not an integer: '" + text + "'");
  }
  return value;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

}  // namespace

double parse_number(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) {
    throw ParameterError("empty number");
  }
  // A '+' that is not part of an exponent separates summands.
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] == '+' && t[i - 1] != 'e' && t[i - 1] != 'E' && t[i - 1] != '^') {
      return parse_number(t.substr(0, i)) + parse_number(t.substr(i + 1));
    }
  }
  return parse_power(t);
}

void ExperimentConfig::validate() const {
  const auto one_of = [](const std::string& v, std::initializer_list<const char*> options) {
    for (const char* o : options) {
      if (v == o) {
        return true;
      }
    }
    return false;
  };
  if (!one_of(engine_initial, {"equilibrium", "reflected"})) {
    throw ParameterError("engine_initial must be equilibrium or reflected, got '" + engine_initial +
                         "'");
  }
  if (!one_of(problem, {"kepler", "kovalevskaya", "engine", "bbm"})) {
    throw ParameterError("unknown problem '" + problem + "'");
  }
  if (!one_of(scheme, {"ours", "im", "gauss", "mvdg"})) {
    throw ParameterError("unknown scheme '" + scheme + "'");
  }
  if (scheme == "mvdg" && problem != "kepler") {
    throw ParameterError("the mean-value discrete gradient scheme is only wired for kepler");
  }
  if (problem == "bbm" && (scheme == "im" || scheme == "mvdg")) {
    throw ParameterError("bbm supports schemes 'ours' and 'gauss'");
  }
  if (!one_of(quad, {"gauss", "exact"})) {
    throw ParameterError("quad must be 'gauss' or 'exact'");
  }
  if (stages < 1) {
    throw ParameterError("stages must be at least 1");
  }
  if (!(dt > 0.0)) {
    throw ParameterError("dt must be positive");
  }
  if (!(t_final >= dt)) {
    throw ParameterError("t_final must be at least dt");
  }
  if (quad_ref_stages < 1 || !(newton_tol > 0.0) || newton_max_iter < 1) {
    throw ParameterError("invalid quadrature or Newton settings");
  }
}

void apply_setting(ExperimentConfig& c, const std::string& raw_key, const std::string& raw_value) {
  std::string key = trim(raw_key);
  for (char& ch : key) {
    if (ch == '-') {
      ch = '_';
    }
  }
  const std::string value = trim(raw_value);
  if (key == "problem") {
    c.problem = value;
  } else if (key == "scheme") {
    c.scheme = value;
  } else if (key == "stages") {
    c.stages = parse_int(value);
  } else if (key == "dt") {
    c.dt = parse_number(value);
  } else if (key == "t_final") {
    c.t_final = parse_number(value);
  } else if (key == "quad") {
    c.quad = value;
  } else if (key == "quad_ref_stages" || key == "quad_ref") {
    c.quad_ref_stages = parse_int(value);
  } else if (key == "newton_tol") {
    c.newton_tol = parse_number(value);
  } else if (key == "newton_max_iter") {
    c.newton_max_iter = parse_int(value);
  } else if (key == "output") {
    c.output = value;
  } else if (key == "engine_cylinders" || key == "engine_C") {
    c.engine_cylinders = parse_int(value);
  } else if (key == "engine_mean_volume" || key == "engine_Vp") {
    c.engine_mean_volume = parse_number(value);
  } else if (key == "engine_heat_capacity" || key == "engine_CV") {
    c.engine_heat_capacity = parse_number(value);
  } else if (key == "engine_env_temperature" || key == "engine_T0") {
    c.engine_env_temperature = parse_number(value);
  } else if (key == "engine_omega0") {
    c.engine_omega0 = parse_number(value);
  } else if (key == "engine_initial") {
    c.engine_initial = value;
  } else if (key == "bbm_cells" || key == "bbm_M") {
    c.bbm_cells = parse_int(value);
  } else if (key == "bbm_left" || key == "bbm_a") {
    c.bbm_left = parse_number(value);
  } else if (key == "bbm_right" || key == "bbm_b") {
    c.bbm_right = parse_number(value);
  } else if (key == "snapshots") {
    c.snapshots.clear();
    for (const auto& item : split_list(value)) {
      c.snapshots.push_back(parse_number(item));
    }
  } else if (key == "stages_list") {
    c.stages_list.clear();
    for (const auto& item : split_list(value)) {
      c.stages_list.push_back(parse_int(item));
    }
  } else if (key == "k_min") {
    c.k_min = parse_int(value);
  } else if (key == "k_max") {
    c.k_max = parse_int(value);
  } else {
    throw ParameterError("unknown configuration key '" + key + "'");
  }
}

Settings read_settings(std::istream& in) {
  Settings settings;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.resize(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("config line " + std::to_string(number) + ": expected key = value");
    }
    settings.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return settings;
}

Settings read_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config '" + path + "'");
  }
  return read_settings(in);
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  for (const auto& [key, value] : read_settings(in)) {
    apply_setting(config, key, value);
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config '" + path + "'");
  }
  return parse_config(in);
}

std::vector<ExperimentConfig> expand_settings(const Settings& settings) {
  ExperimentConfig base;
  std::vector<std::string> schemes;
  std::vector<std::string> stages;
  for (const auto& [key, value] : settings) {
    if (key == "scheme") {
      schemes = split_list(value);
    } else if (key == "stages") {
      stages = split_list(value);
    } else {
      apply_setting(base, key, value);
    }
  }
  if (schemes.empty()) {
    schemes.push_back(base.scheme);
  }
  if (stages.empty()) {
    stages.push_back(std::to_string(base.stages));
  }
  const bool expanded = schemes.size() > 1 || stages.size() > 1;
  std::vector<ExperimentConfig> out;
  for (const auto& scheme : schemes) {
    for (const auto& s : stages) {
      ExperimentConfig c = base;
      apply_setting(c, "scheme", scheme);
      apply_setting(c, "stages", s);
      if (expanded) {
        const std::string name =
            c.output.empty() ? c.problem + ".csv" : c.output;
        const std::filesystem::path p(name);
        c.output = ((p.parent_path() / p.stem()).string() + "_" + scheme + "_s" + s + ".csv");
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::string resolve_output_path(const ExperimentConfig& config) {
  std::string name = config.output.empty() ? config.problem + "_" + config.scheme + ".csv"
                                           : config.output;
  if (const char* dir = std::getenv("AVINT_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
    return (std::filesystem::path(dir) / std::filesystem::path(name).filename()).string();
  }
  return name;
}

}  // namespace avint
