#include "splitflow/flows.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "splitflow/errors.hpp"

namespace splitflow {

namespace {

constexpr double kZeroPotential = 1e-12;

void require_parabolic(const OperatorContext& ctx, const char* what) {
  if (ctx.equation().is_schrodinger()) {
    throw std::invalid_argument(std::string(what) + " requires the parabolic equation");
  }
}

double max_abs(const ComplexField& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

void FlowStrategy::validate_for(Equation e) const {
  if (substeps < 1) throw std::invalid_argument("substeps must be at least 1");
  if (kind == FlowStrategyKind::closed_form_invariance && e != Equation::schrodinger) {
    throw std::invalid_argument("closed-form flow strategy requires the Schrodinger equation");
  }
  if (kind == FlowStrategyKind::strang_composite && e != Equation::parabolic) {
    throw std::invalid_argument("strang-composite flow strategy requires the parabolic equation");
  }
}

std::string_view to_string(FlowStrategyKind k) {
  switch (k) {
    case FlowStrategyKind::closed_form_invariance:
      return "closed-form";
    case FlowStrategyKind::rk4_combined:
      return "rk4";
    case FlowStrategyKind::strang_composite:
      return "strang-composite";
  }
  return "?";
}

FlowStrategyKind parse_flow_strategy(std::string_view name) {
  if (name == "closed-form" || name == "closed_form_invariance") {
    return FlowStrategyKind::closed_form_invariance;
  }
  if (name == "rk4" || name == "rk4_combined") return FlowStrategyKind::rk4_combined;
  if (name == "strang-composite" || name == "strang_composite" || name == "exact-f2") {
    return FlowStrategyKind::strang_composite;
  }
  throw std::invalid_argument("unknown flow strategy '" + std::string(name) + "'");
}

FlowStrategy default_strategy(Equation e) {
  return {e == Equation::schrodinger ? FlowStrategyKind::closed_form_invariance
                                     : FlowStrategyKind::strang_composite,
          1};
}

LinearFlowResult linear_flow(const ComplexField& v, const OperatorContext& ctx, Complex alpha,
                             double tau) {
  const Complex rate = ctx.equation().c() * alpha * tau;
  if (tau == 0.0 || alpha == Complex(0.0)) return {v, false};
  const auto lambda = ctx.grid()->laplacian_eigenvalues();
  const Spectrum s = to_spectral(v);
  ComplexField out =
      apply_spectral_multiplier(s, [&](std::size_t m) { return std::exp(rate * lambda[m]); });
  return {std::move(out), rate.real() < 0.0};
}

ComplexField gpe_modified_flow(const ComplexField& v, const OperatorContext& ctx, double beta1,
                               double beta2, double tau) {
  const RealField f = modified_phase(v, ctx, beta1, beta2, tau);
  ComplexField out(v.grid());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::polar(1.0, -tau * f[i]) * v[i];
  }
  return out;
}

ComplexField parabolic_f2_exact_flow(const ComplexField& v, const OperatorContext& ctx,
                                     double beta, double tau) {
  require_parabolic(ctx, "exact F2 flow");
  const double scale = std::max(1.0, max_abs(v));
  if (max_imag(v) > 1e-10 * scale) {
    throw std::invalid_argument("exact F2 flow requires a real-valued state");
  }
  const double t = beta * tau;
  const auto& V = ctx.potential().value;
  const double theta = ctx.theta();
  ComplexField out(v.grid());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double u0 = v[i].real();
    double radicand;
    if (std::abs(V[i]) < kZeroPotential) {
      radicand = 1.0 - 2.0 * t * theta * u0 * u0;
    } else {
      const double growth = std::expm1(-2.0 * t * V[i]);
      radicand = 1.0 + growth + theta * growth / V[i] * u0 * u0;
    }
    if (!(radicand > 0.0)) {
      std::ostringstream msg;
      msg << "exact F2 flow blows up at node " << i << " within effective time " << t;
      throw BlowUpError(msg.str(), t);
    }
    out[i] = u0 / std::sqrt(radicand);
  }
  return out;
}

ComplexField parabolic_g2_euler_flow(const ComplexField& v, const OperatorContext& ctx,
                                     double beta2, double tau) {
  require_parabolic(ctx, "Euler G2 flow");
  if (beta2 == 0.0 || tau == 0.0) return v;
  ComplexField out = apply_G2(v, ctx);
  out *= tau * beta2 * tau * tau;
  out += v;
  return out;
}

ComplexField rk4_combined_flow(const ComplexField& v, const OperatorContext& ctx, Complex beta1,
                               double beta2, double tau, int substeps) {
  if (substeps < 1) throw std::invalid_argument("substeps must be at least 1");
  if (tau == 0.0) return v;
  const double weight = beta2 * tau * tau;
  const auto rhs = [&](const ComplexField& u) {
    ComplexField r = apply_F2(u, ctx);
    r *= beta1;
    if (weight != 0.0) {
      ComplexField g = apply_G2(u, ctx);
      g *= weight;
      r += g;
    }
    return r;
  };
  const double h = tau / substeps;
  ComplexField u = v;
  for (int s = 0; s < substeps; ++s) {
    const ComplexField k1 = rhs(u);
    const ComplexField k2 = rhs(u + (0.5 * h) * k1);
    const ComplexField k3 = rhs(u + (0.5 * h) * k2);
    const ComplexField k4 = rhs(u + h * k3);
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (!all_finite(u)) {
      throw InstabilityError("RK4 nonlinear subflow produced non-finite values at substep " +
                                 std::to_string(s),
                             static_cast<std::size_t>(s));
    }
  }
  return u;
}

ComplexField strang_composite_flow(const ComplexField& v, const OperatorContext& ctx, double tau,
                                   double beta1, double beta2) {
  require_parabolic(ctx, "Strang composite flow");
  ComplexField u = parabolic_f2_exact_flow(v, ctx, beta1, 0.5 * tau);
  u = parabolic_g2_euler_flow(u, ctx, beta2, tau);
  return parabolic_f2_exact_flow(u, ctx, beta1, 0.5 * tau);
}

}  // namespace splitflow
