#pragma once

#include <functional>
#include <string>
#include <vector>

#include "splitflow/diagnostics.hpp"
#include "splitflow/flows.hpp"
#include "splitflow/schemes.hpp"

namespace splitflow {

/// Scalar measurement taken every `stride` steps (and always at the first and
/// last step).
struct Observer {
  std::string name;
  long stride = 1;
  std::function<double(const ComplexField&, const OperatorContext&)> measure;
};

struct ObserverSample {
  std::size_t observer = 0;
  long step = 0;
  double time = 0.0;
  double value = 0.0;
};

struct IntegrationRun {
  ProblemSpec problem;
  SplittingScheme scheme;
  double tau = 0.0;
  long steps = 0;
  FlowStrategy strategy;
  std::vector<Observer> observers;

  /// tau = final_time / steps.
  static IntegrationRun make(ProblemSpec problem, SplittingScheme scheme, long steps,
                             FlowStrategy strategy);

  /// Checks N tau = T and that scheme and strategy suit the equation.
  /// Complex coefficients are refused for the closed-form and exact-F2 flows,
  /// which assume real stage coefficients.
  void validate() const;
};

/// Norm above which a run is declared unstable.
inline constexpr double kInstabilityNorm = 1e8;

/// One composite step of size tau. Flow errors are rethrown with the stage
/// index in the message. Returns whether any linear stage ran backwards.
ComplexField splitting_step(const ComplexField& state, const SplittingScheme& scheme, double tau,
                            const FlowStrategy& strategy, const OperatorContext& ctx,
                            bool* backward_diffusion = nullptr);

ComplexField splitting_step(const ComplexField& state, const IntegrationRun& run,
                            const OperatorContext& ctx);

struct IntegrationResult {
  ComplexField final_state;
  RunStatus status = RunStatus::ok;
  /// step index n (0-based) during which the run failed
  long failed_step = -1;
  std::string message;
  bool backward_diffusion = false;
  std::vector<ObserverSample> samples;
};

/// N composed steps. Numerical failures (blow-up, non-finite values, norm
/// above kInstabilityNorm) end the run with status unstable instead of
/// throwing.
IntegrationResult integrate(const ComplexField& initial, const IntegrationRun& run);
IntegrationResult integrate(const ComplexField& initial, const IntegrationRun& run,
                            const OperatorContext& ctx);

}  // namespace splitflow
