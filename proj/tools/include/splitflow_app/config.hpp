#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splitflow/flows.hpp"
#include "splitflow/model.hpp"

namespace splitflow::app {

enum class Command { convergence, energy, validate, order_reduction };
enum class ReferencePolicy { automatic, exact, refined };

std::string to_string(Command c);
Command parse_command(const std::string& name);
ReferencePolicy parse_reference(const std::string& name);

/// Everything an experiment needs. Defaults reproduce the 1D desk-scale
/// setup: a = 10, M1 = 256, T = 1, 16 geometric step sizes in [1e-3, 1e-1].
struct ExperimentConfig {
  Command command = Command::convergence;
  Equation equation = Equation::schrodinger;
  int degree = 2;
  /// Unset: +1 for Schrodinger, -1 for parabolic.
  std::optional<double> prefactor;
  double theta = 1.0;
  int dim = 1;
  int points_per_dim = 256;
  double half_width = 10.0;
  double final_time = 1.0;

  double tau_max = 1e-1;
  double tau_min = 1e-3;
  int tau_count = 16;
  /// Overrides the geometric sequence when non-empty. For order-reduction an
  /// empty list means {0.02, 0.01, 0.005, 0.0025}.
  std::vector<double> taus;

  std::vector<std::string> methods{"lie", "strang", "yoshida", "chin_modified"};
  /// Unset: closed-form for Schrodinger, strang-composite for parabolic.
  std::optional<FlowStrategyKind> flow_strategy;
  int substeps = 1;
  ReferencePolicy reference = ReferencePolicy::automatic;

  /// energy: step size and sampling stride
  double tau = 1e-3;
  long stride = 10;

  /// order-reduction probe
  double probe_u0 = 0.5;
  double probe_final_time = 0.5;

  std::string output = "-";
  std::uint64_t seed = 42;
  int workers = 0;
  /// Write runtime_seconds as 0 so repeated runs are byte-identical.
  bool deterministic = false;

  double effective_prefactor() const;
  FlowStrategy effective_strategy() const;
  ProblemSpec problem() const;

  /// Throws std::invalid_argument on the first invalid field.
  void validate() const;

  /// Step sizes as T/N with distinct integers N, strictly decreasing.
  std::vector<double> step_sizes() const;
  std::vector<long> step_counts() const;
};

}  // namespace splitflow::app
