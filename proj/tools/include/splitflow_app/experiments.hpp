#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "splitflow/diagnostics.hpp"
#include "splitflow_app/config.hpp"

namespace splitflow::app {

/// Integrates every (method, tau) pair and measures the global error at the
/// final time against the exact linear solution or a refined chin_modified
/// reference (tau_min / 10). Unstable runs are recorded, not thrown.
ConvergenceReport run_convergence(const ExperimentConfig& config);

struct MethodEnergy {
  std::string method;
  EnergySeries series;
  RunStatus status = RunStatus::ok;
};

/// Energy sampled every `stride` steps for each configured method.
std::vector<MethodEnergy> run_energy(const ExperimentConfig& config);

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Exact-solution error of chin_modified at tau_min plus the operator and
/// flow invariant suite for the configured equation.
ValidationReport run_validate(const ExperimentConfig& config);

/// Scalar order-reduction probe for the complex fourth-order coefficients.
ProbeResult run_order_reduction(const ExperimentConfig& config);

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report,
                           bool deterministic = false);
void write_energy_csv(std::ostream& out, const std::vector<MethodEnergy>& runs);
void write_order_reduction_csv(std::ostream& out, const ProbeResult& probe);
void write_validation_report(std::ostream& out, const ValidationReport& report);

/// Runs `count` tasks on up to `workers` threads (0: hardware concurrency).
/// Task i writes only its own slot, so output order never depends on timing.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task);

}  // namespace splitflow::app
