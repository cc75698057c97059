#include <fstream>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "splitflow/errors.hpp"
#include "splitflow/schemes.hpp"
#include "splitflow_app/config.hpp"
#include "splitflow_app/experiments.hpp"

namespace {

using splitflow::app::Command;
using splitflow::app::ExperimentConfig;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitConfig = 2;

struct RawOptions {
  std::string config;
  std::string equation = "schrodinger";
  std::string prefactor;
  std::string flow_strategy;
  std::string reference = "auto";
};

void add_shared(CLI::App& sub, ExperimentConfig& cfg, RawOptions& raw) {
  sub.add_option("--config", raw.config, "flat key=value file; command-line flags take precedence");
  sub.add_option("--equation", raw.equation, "schrodinger | parabolic");
  sub.add_option("--degree", cfg.degree, "potential degree q (even)");
  sub.add_option("--prefactor", raw.prefactor, "potential prefactor C0 (default matched)");
  sub.add_option("--theta", cfg.theta, "cubic coupling");
  sub.add_option("--dim", cfg.dim, "spatial dimension (1-3)");
  sub.add_option("--points-per-dim", cfg.points_per_dim, "grid points per axis (even)");
  sub.add_option("--half-width", cfg.half_width, "domain half width a");
  sub.add_option("--final-time", cfg.final_time, "final time T");
  sub.add_option("--tau-max", cfg.tau_max, "largest step size");
  sub.add_option("--tau-min", cfg.tau_min, "smallest step size");
  sub.add_option("--tau-count", cfg.tau_count, "number of geometric step sizes");
  sub.add_option("--taus", cfg.taus, "explicit step sizes")->delimiter(',');
  sub.add_option("--methods", cfg.methods, "splitting methods")->delimiter(',');
  sub.add_option("--flow-strategy", raw.flow_strategy, "closed-form | rk4 | strang-composite");
  sub.add_option("--substeps", cfg.substeps, "RK4 substeps per nonlinear stage");
  sub.add_option("--reference", raw.reference, "auto | exact | refined");
  sub.add_option("--tau", cfg.tau, "step size for energy runs");
  sub.add_option("--stride", cfg.stride, "energy sampling stride");
  sub.add_option("--probe-u0", cfg.probe_u0, "scalar probe initial value");
  sub.add_option("--probe-final-time", cfg.probe_final_time, "scalar probe final time");
  sub.add_option("--output,-o", cfg.output, "output path, - for stdout");
  sub.add_option("--seed", cfg.seed, "seed for random test fields");
  sub.add_option("--workers", cfg.workers, "worker threads, 0 for all cores");
  sub.add_flag("--deterministic", cfg.deterministic, "write runtime_seconds as 0");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Keys are long option names without the dashes. Options already given on
// the command line keep their values.
void apply_config_file(CLI::App& sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": unknown key '" + key +
                                  "'");
    }
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

void resolve(ExperimentConfig& cfg, const RawOptions& raw) {
  cfg.equation = splitflow::parse_equation(raw.equation);
  if (!raw.prefactor.empty()) cfg.prefactor = std::stod(raw.prefactor);
  if (!raw.flow_strategy.empty()) cfg.flow_strategy = splitflow::parse_flow_strategy(raw.flow_strategy);
  cfg.reference = splitflow::app::parse_reference(raw.reference);
}

int run(const ExperimentConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::convergence:
      splitflow::app::write_convergence_csv(out, splitflow::app::run_convergence(cfg),
                                            cfg.deterministic);
      return kExitOk;
    case Command::energy: {
      const auto runs = splitflow::app::run_energy(cfg);
      splitflow::app::write_energy_csv(out, runs);
      return kExitOk;
    }
    case Command::validate: {
      const auto report = splitflow::app::run_validate(cfg);
      splitflow::app::write_validation_report(out, report);
      return report.all_passed() ? kExitOk : kExitInvariant;
    }
    case Command::order_reduction:
      splitflow::app::write_order_reduction_csv(out, splitflow::app::run_order_reduction(cfg));
      return kExitOk;
  }
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"splitflow: splitting integrators for cubic Schrodinger and parabolic flows"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  RawOptions raw;
  const std::pair<const char*, Command> commands[] = {
      {"convergence", Command::convergence},
      {"energy", Command::energy},
      {"validate", Command::validate},
      {"order-reduction", Command::order_reduction},
  };
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [name, command] : commands) {
    CLI::App* sub = app.add_subcommand(name);
    add_shared(*sub, cfg, raw);
    subs.emplace_back(sub, command);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  CLI::App* active = nullptr;
  for (const auto& [sub, command] : subs) {
    if (sub->parsed()) {
      cfg.command = command;
      active = sub;
    }
  }

  try {
    if (!raw.config.empty()) apply_config_file(*active, raw.config);
    resolve(cfg, raw);
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (cfg.output == "-") return run(cfg, std::cout);
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open " << cfg.output << '\n';
      return kExitConfig;
    }
    const int code = run(cfg, file);
    file.flush();
    if (!file) {
      std::cerr << "error: failed writing " << cfg.output << '\n';
      return kExitConfig;
    }
    return code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
}
