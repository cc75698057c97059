#pragma once

#include <string_view>

#include "splitflow/operators.hpp"

namespace splitflow {

/// How nonlinear (B and modified-B) stages are evolved.
enum class FlowStrategyKind {
  /// Closed-form phase rotation from the invariance of f (Schrodinger).
  closed_form_invariance,
  /// Classical RK4 on beta1 F2 + beta2 tau^2 G2 (any equation; the naive path).
  rk4_combined,
  /// Exact F2 flow, with the modified stage approximated by
  /// E_{tau/2, b1 F2} o Euler_{tau, b2 tau^2 G2} o E_{tau/2, b1 F2} (parabolic).
  strang_composite,
};

struct FlowStrategy {
  FlowStrategyKind kind = FlowStrategyKind::closed_form_invariance;
  int substeps = 1;

  /// Throws std::invalid_argument when the strategy does not apply to `e`.
  void validate_for(Equation e) const;
};

std::string_view to_string(FlowStrategyKind k);
/// Accepts closed-form, rk4, strang-composite (and the snake_case spellings).
FlowStrategyKind parse_flow_strategy(std::string_view name);
/// closed_form_invariance for Schrodinger, strang_composite for parabolic.
FlowStrategy default_strategy(Equation e);

struct LinearFlowResult {
  ComplexField state;
  /// Set when Re(c alpha tau) < 0, i.e. the stage runs a diffusion backwards.
  bool backward_diffusion = false;
};

/// Exact flow of du/dt = alpha c Lap u over time tau: coefficients are
/// multiplied by exp(c alpha tau lambda_m). alpha may be complex.
LinearFlowResult linear_flow(const ComplexField& v, const OperatorContext& ctx, Complex alpha,
                             double tau);

/// exp(-i tau f(v)) v with f = modified_phase(v, beta1, beta2, tau).
/// Requires the Schrodinger equation and real beta1, beta2, tau.
ComplexField gpe_modified_flow(const ComplexField& v, const OperatorContext& ctx, double beta1,
                               double beta2, double tau);

/// Pointwise exact flow of u' = (V + theta u^2) u over effective time beta*tau
/// for real-valued u (parabolic only). Throws BlowUpError where the radicand
/// e^{-2tV} + theta (e^{-2tV} - 1)/V u0^2 is not positive.
ComplexField parabolic_f2_exact_flow(const ComplexField& v, const OperatorContext& ctx,
                                     double beta, double tau);

/// One explicit Euler step of size tau for the flow of beta2 tau^2 G2.
ComplexField parabolic_g2_euler_flow(const ComplexField& v, const OperatorContext& ctx,
                                     double beta2, double tau);

/// Classical RK4 with `substeps` equal substeps over [0, tau] for
/// u' = beta1 F2(u) + beta2 tau^2 G2(u); tau inside the vector field is a
/// frozen parameter. Throws InstabilityError on non-finite intermediates.
ComplexField rk4_combined_flow(const ComplexField& v, const OperatorContext& ctx, Complex beta1,
                               double beta2, double tau, int substeps = 1);

/// Strang approximation of the modified parabolic stage:
/// exact(beta1, tau/2) o euler(beta2, tau) o exact(beta1, tau/2).
ComplexField strang_composite_flow(const ComplexField& v, const OperatorContext& ctx, double tau,
                                   double beta1 = 2.0 / 3.0, double beta2 = -1.0 / 72.0);

}  // namespace splitflow
