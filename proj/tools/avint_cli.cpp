// Command-line experiment runner: run, convergence, list-experiments.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "avint/core/errors.hpp"
#include "avint/harness/config.hpp"
#include "avint/harness/csv.hpp"
#include "avint/harness/experiments.hpp"

namespace {

constexpr int kExitStepFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// "--key=value" or "--key value" pairs left over after CLI11 parsing.
avint::Settings parse_overrides(const std::vector<std::string>& extras) {
  avint::Settings out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    std::string arg = extras[i];
    if (arg.rfind("--", 0) != 0) {
      throw avint::ParameterError("unexpected argument '" + arg + "'");
    }
    arg = arg.substr(2);
    const auto eq = arg.find('=');
    if (eq != std::string::npos) {
      out.emplace_back(arg.substr(0, eq), arg.substr(eq + 1));
    } else if (i + 1 < extras.size()) {
      out.emplace_back(arg, extras[++i]);
    } else {
      throw avint::ParameterError("option '--" + arg + "' needs a value");
    }
  }
  for (auto& [key, value] : out) {
    for (char& ch : key) {
      if (ch == '-') {
        ch = '_';
      }
    }
  }
  return out;
}

avint::Settings merged_settings(const std::string& path, const std::vector<std::string>& extras) {
  avint::Settings settings = avint::read_settings_file(path);
  for (auto& kv : parse_overrides(extras)) {
    settings.push_back(std::move(kv));
  }
  return settings;
}

int run_command(const std::string& path, const std::vector<std::string>& extras) {
  const auto configs = avint::expand_settings(merged_settings(path, extras));
  int status = 0;
  for (const auto& config : configs) {
    config.validate();
    const avint::RunResult result = avint::run_experiment(config);
    const std::string csv = avint::write_run(config, result);
    std::cout << "# " << csv << '\n';
    for (const auto& line : avint::summary_lines(config, result)) {
      std::cout << line << '\n';
    }
    if (!result.ok()) {
      std::cerr << "error: " << config.problem << "/" << config.scheme << " s=" << config.stages
                << ": step " << *result.failed_step << " failed: " << result.failure << '\n';
      status = kExitStepFailure;
    }
  }
  return status;
}

int convergence_command(const std::string& path, const std::vector<std::string>& extras) {
  avint::ExperimentConfig config;
  for (const auto& [key, value] : merged_settings(path, extras)) {
    avint::apply_setting(config, key, value);
  }
  if (config.problem.empty()) {
    config.problem = "kepler";
  }
  if (config.problem != "kepler") {
    throw avint::ParameterError("the convergence study is defined for the kepler problem");
  }
  const avint::ConvergenceResult result = avint::convergence_study(config);
  const std::string csv = avint::write_convergence(config, result);
  std::cout << "# " << csv << '\n';
  for (const auto& p : result.points) {
    std::cout << "dt=" << avint::format_number(p.dt) << " s=" << p.stages
              << " error=" << avint::format_number(p.error) << '\n';
  }
  for (const auto& [s, slope] : result.slopes) {
    std::cout << "slope_s" << s << "=" << avint::format_number(slope) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-preserving time integration experiments"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the experiment(s) described by a config file");
  run->add_option("config", config_path, "key=value config file")->required();
  run->allow_extras();

  std::string conv_path;
  auto* conv = app.add_subcommand("convergence", "Kepler convergence study");
  conv->add_option("config", conv_path, "key=value config file")->required();
  conv->allow_extras();

  app.add_subcommand("list-experiments", "List the shipped experiment configs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(config_path, run->remaining());
    }
    if (conv->parsed()) {
      return convergence_command(conv_path, conv->remaining());
    }
    for (const auto& e : avint::shipped_experiments()) {
      std::cout << e.name << "\texperiments/" << e.name << ".cfg\t" << e.description << '\n';
    }
    return 0;
  } catch (const avint::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}
