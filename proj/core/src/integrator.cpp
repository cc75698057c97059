#include "splitflow/integrator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "splitflow/errors.hpp"

namespace splitflow {

namespace {

ComplexField nonlinear_stage(const ComplexField& v, const Stage& stage, double tau,
                             const FlowStrategy& strategy, const OperatorContext& ctx) {
  const Complex beta = stage.coefficient;
  const double weight = stage.kind == StageKind::modified ? stage.commutator_weight : 0.0;
  const bool schrodinger = ctx.equation().is_schrodinger();

  if (strategy.kind == FlowStrategyKind::rk4_combined) {
    return rk4_combined_flow(v, ctx, beta, weight, tau, strategy.substeps);
  }
  if (beta.imag() != 0.0) {
    throw std::invalid_argument("closed-form nonlinear flows need real stage coefficients");
  }
  if (schrodinger) return gpe_modified_flow(v, ctx, beta.real(), weight, tau);
  if (stage.kind == StageKind::modified) {
    return strang_composite_flow(v, ctx, tau, beta.real(), weight);
  }
  return parabolic_f2_exact_flow(v, ctx, beta.real(), tau);
}

std::string annotate(const std::exception& e, std::size_t stage) {
  return "stage " + std::to_string(stage) + ": " + e.what();
}

}  // namespace

IntegrationRun IntegrationRun::make(ProblemSpec problem, SplittingScheme scheme, long steps,
                                    FlowStrategy strategy) {
  if (steps < 1) throw std::invalid_argument("number of steps must be positive");
  IntegrationRun run;
  run.tau = problem.final_time / static_cast<double>(steps);
  run.steps = steps;
  run.problem = std::move(problem);
  run.scheme = std::move(scheme);
  run.strategy = strategy;
  return run;
}

void IntegrationRun::validate() const {
  problem.validate();
  if (steps < 1) throw std::invalid_argument("number of steps must be positive");
  if (std::abs(steps * tau - problem.final_time) > 1e-12 * std::max(1.0, problem.final_time)) {
    throw std::invalid_argument("steps * tau must equal the final time");
  }
  strategy.validate_for(problem.equation.tag());
  if (scheme.stages.empty()) throw std::invalid_argument("scheme has no stages");
  if (scheme.has_complex_coefficients() &&
      strategy.kind != FlowStrategyKind::rk4_combined) {
    throw std::invalid_argument("scheme '" + scheme.name +
                                "' has complex coefficients; select the rk4 flow strategy");
  }
  for (const auto& o : observers) {
    if (o.stride < 1) throw std::invalid_argument("observer stride must be positive");
    if (!o.measure) throw std::invalid_argument("observer has no measurement");
  }
}

ComplexField splitting_step(const ComplexField& state, const SplittingScheme& scheme, double tau,
                            const FlowStrategy& strategy, const OperatorContext& ctx,
                            bool* backward_diffusion) {
  ComplexField u = state;
  if (tau == 0.0) return u;
  for (std::size_t s = 0; s < scheme.stages.size(); ++s) {
    const Stage& stage = scheme.stages[s];
    if (stage.coefficient == Complex(0.0)) continue;
    try {
      if (stage.kind == StageKind::linear) {
        // A real heat step maps real data to real data; drop the FFT roundoff
        // so the exact F2 flow keeps seeing a real state.
        const bool stays_real = !ctx.equation().is_schrodinger() &&
                                stage.coefficient.imag() == 0.0 && max_imag(u) == 0.0;
        auto r = linear_flow(u, ctx, stage.coefficient, tau);
        if (r.backward_diffusion && backward_diffusion) *backward_diffusion = true;
        u = stays_real ? to_complex(real_part(r.state)) : std::move(r.state);
      } else {
        u = nonlinear_stage(u, stage, tau, strategy, ctx);
      }
    } catch (const BlowUpError& e) {
      throw BlowUpError(annotate(e, s), e.time());
    } catch (const InstabilityError& e) {
      throw InstabilityError(annotate(e, s), e.substep());
    }
  }
  return u;
}

ComplexField splitting_step(const ComplexField& state, const IntegrationRun& run,
                            const OperatorContext& ctx) {
  return splitting_step(state, run.scheme, run.tau, run.strategy, ctx);
}

IntegrationResult integrate(const ComplexField& initial, const IntegrationRun& run) {
  const OperatorContext ctx(run.problem);
  return integrate(initial, run, ctx);
}

IntegrationResult integrate(const ComplexField& initial, const IntegrationRun& run,
                            const OperatorContext& ctx) {
  run.validate();
  IntegrationResult result;
  result.final_state = initial;

  const auto sample = [&](long n, const ComplexField& u) {
    for (std::size_t k = 0; k < run.observers.size(); ++k) {
      const auto& o = run.observers[k];
      if (n % o.stride == 0 || n == run.steps) {
        result.samples.push_back({k, n, n * run.tau, o.measure(u, ctx)});
      }
    }
  };

  sample(0, result.final_state);
  for (long n = 0; n < run.steps; ++n) {
    try {
      result.final_state = splitting_step(result.final_state, run.scheme, run.tau, run.strategy,
                                          ctx, &result.backward_diffusion);
    } catch (const BlowUpError& e) {
      result.status = RunStatus::unstable;
      result.failed_step = n;
      result.message = e.what();
      return result;
    } catch (const InstabilityError& e) {
      result.status = RunStatus::unstable;
      result.failed_step = n;
      result.message = e.what();
      return result;
    }
    if (!all_finite(result.final_state) || discrete_l2(result.final_state) > kInstabilityNorm) {
      result.status = RunStatus::unstable;
      result.failed_step = n;
      result.message = "state norm exceeded " + std::to_string(kInstabilityNorm) +
                       " or became non-finite at step " + std::to_string(n);
      return result;
    }
    sample(n + 1, result.final_state);
  }
  return result;
}

}  // namespace splitflow
