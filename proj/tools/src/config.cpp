#include "splitflow_app/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "splitflow/schemes.hpp"

namespace splitflow::app {

std::string to_string(Command c) {
  switch (c) {
    case Command::convergence:
      return "convergence";
    case Command::energy:
      return "energy";
    case Command::validate:
      return "validate";
    case Command::order_reduction:
      return "order-reduction";
  }
  return "?";
}

Command parse_command(const std::string& name) {
  if (name == "convergence") return Command::convergence;
  if (name == "energy") return Command::energy;
  if (name == "validate") return Command::validate;
  if (name == "order-reduction") return Command::order_reduction;
  throw std::invalid_argument("unknown command '" + name + "'");
}

ReferencePolicy parse_reference(const std::string& name) {
  if (name == "auto") return ReferencePolicy::automatic;
  if (name == "exact") return ReferencePolicy::exact;
  if (name == "refined") return ReferencePolicy::refined;
  throw std::invalid_argument("reference must be auto, exact or refined");
}

double ExperimentConfig::effective_prefactor() const {
  return prefactor.value_or(matched_prefactor(equation));
}

FlowStrategy ExperimentConfig::effective_strategy() const {
  FlowStrategy s = default_strategy(equation);
  if (flow_strategy) s.kind = *flow_strategy;
  s.substeps = substeps;
  return s;
}

ProblemSpec ExperimentConfig::problem() const {
  ProblemSpec p;
  p.equation = EquationKind::of(equation);
  p.potential = {degree, effective_prefactor()};
  p.theta = theta;
  p.grid = build_grid(dim, half_width, points_per_dim);
  p.final_time = final_time;
  return p;
}

void ExperimentConfig::validate() const {
  if (degree != 2 && degree != 4) throw std::invalid_argument("q must be 2 or 4");
  if (dim < 1 || dim > 3) throw std::invalid_argument("dim must be 1, 2 or 3");
  if (points_per_dim < 8 || points_per_dim % 2 != 0) {
    throw std::invalid_argument("points-per-dim must be even and at least 8");
  }
  if (!(half_width > 0.0)) throw std::invalid_argument("half-width must be positive");
  if (!(final_time > 0.0)) throw std::invalid_argument("final-time must be positive");
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
  if (substeps < 1) throw std::invalid_argument("substeps must be at least 1");
  if (workers < 0) throw std::invalid_argument("workers must be nonnegative");
  for (const auto& m : methods) (void)make_scheme(m);
  if (methods.empty()) throw std::invalid_argument("at least one method is required");
  effective_strategy().validate_for(equation);
  if (effective_strategy().kind != FlowStrategyKind::rk4_combined) {
    for (const auto& m : methods) {
      if (make_scheme(m).has_complex_coefficients()) {
        throw std::invalid_argument("method " + m + " has complex coefficients; use --flow-strategy rk4");
      }
    }
  }

  switch (command) {
    case Command::convergence: {
      if (taus.empty()) {
        if (tau_count < 3) throw std::invalid_argument("need at least 3 step sizes for a fit");
        if (!(tau_min > 0.0) || !(tau_max > tau_min)) {
          throw std::invalid_argument("need 0 < tau-min < tau-max");
        }
      } else if (taus.size() < 3) {
        throw std::invalid_argument("need at least 3 step sizes for a fit");
      }
      if (step_sizes().size() < 3) {
        throw std::invalid_argument("step sizes collapse to fewer than 3 distinct values");
      }
      if (reference == ReferencePolicy::exact) {
        if (theta != 0.0 || degree != 2 || effective_prefactor() != matched_prefactor(equation)) {
          throw std::invalid_argument("exact reference needs q = 2, theta = 0 and matched C0");
        }
      }
      break;
    }
    case Command::energy:
      if (equation != Equation::schrodinger) {
        throw std::invalid_argument("energy runs require the Schrodinger equation");
      }
      if (!(tau > 0.0) || tau > final_time) throw std::invalid_argument("tau must lie in (0, T]");
      if (stride < 1) throw std::invalid_argument("stride must be positive");
      break;
    case Command::validate:
      if (theta != 0.0 || degree != 2 || effective_prefactor() != matched_prefactor(equation)) {
        throw std::invalid_argument("validate needs q = 2, theta = 0 and C0 = " +
                                    std::to_string(matched_prefactor(equation)));
      }
      if (!(tau_min > 0.0)) throw std::invalid_argument("tau-min must be positive");
      break;
    case Command::order_reduction:
      if (!(probe_u0 > 0.0)) throw std::invalid_argument("probe u0 must be positive");
      if (!(probe_final_time > 0.0) || 2.0 * probe_u0 * probe_u0 * probe_final_time >= 1.0) {
        throw std::invalid_argument("probe final time must stay below the blow-up time");
      }
      if (!taus.empty() && taus.size() < 3) {
        throw std::invalid_argument("need at least 3 step sizes for a fit");
      }
      break;
  }
}

std::vector<long> ExperimentConfig::step_counts() const {
  std::vector<double> raw = taus;
  if (raw.empty()) {
    for (int i = 0; i < tau_count; ++i) {
      const double frac = tau_count == 1 ? 0.0 : static_cast<double>(i) / (tau_count - 1);
      raw.push_back(tau_max * std::pow(tau_min / tau_max, frac));
    }
  }
  std::vector<long> counts;
  for (const double t : raw) {
    if (!(t > 0.0)) throw std::invalid_argument("step sizes must be positive");
    counts.push_back(std::max(1L, std::lround(final_time / t)));
  }
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
  return counts;
}

std::vector<double> ExperimentConfig::step_sizes() const {
  std::vector<double> out;
  for (const long n : step_counts()) out.push_back(final_time / static_cast<double>(n));
  return out;
}

}  // namespace splitflow::app
