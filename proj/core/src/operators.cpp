#include "splitflow/operators.hpp"

#include <stdexcept>

namespace splitflow {

namespace {

// sum_j a_j b_j over the axes at node i
Complex dot(const std::vector<ComplexField>& a, const std::vector<ComplexField>& b,
            std::size_t i) {
  Complex s = 0.0;
  for (std::size_t axis = 0; axis < a.size(); ++axis) s += a[axis][i] * b[axis][i];
  return s;
}

Complex dot(const std::vector<RealField>& a, const std::vector<ComplexField>& b, std::size_t i) {
  Complex s = 0.0;
  for (std::size_t axis = 0; axis < a.size(); ++axis) s += a[axis][i] * b[axis][i];
  return s;
}

double grad_norm_squared(const std::vector<ComplexField>& g, std::size_t i) {
  double s = 0.0;
  for (const auto& component : g) s += std::norm(component[i]);
  return s;
}

void require_grid(const ComplexField& v, const OperatorContext& ctx) {
  if (!v.grid() || !same_layout(*v.grid(), *ctx.grid())) {
    throw std::invalid_argument("field does not live on the problem grid");
  }
}

}  // namespace

OperatorContext::OperatorContext(ProblemSpec problem) : problem_(std::move(problem)) {
  problem_.validate();
  potential_ = evaluate_potential(problem_.potential, problem_.grid);
}

ComplexField apply_F1(const ComplexField& v, const OperatorContext& ctx) {
  require_grid(v, ctx);
  ComplexField out = spectral_laplacian(v);
  out *= ctx.equation().c();
  return out;
}

ComplexField apply_F2(const ComplexField& v, const OperatorContext& ctx) {
  require_grid(v, ctx);
  const Complex cb = ctx.equation().c_bar();
  const auto& V = ctx.potential().value;
  const double theta = ctx.theta();
  ComplexField out(v.grid());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = cb * (V[i] + theta * std::norm(v[i])) * v[i];
  }
  return out;
}

ComplexField apply_G1(const ComplexField& v, const OperatorContext& ctx) {
  require_grid(v, ctx);
  const Complex c = ctx.equation().c();
  const Complex cb = ctx.equation().c_bar();
  const double c2 = std::norm(c);
  const double theta = ctx.theta();
  const auto& pot = ctx.potential();

  const StateDerivatives dv = spectral_derivatives(v);
  ComplexField out(v.grid());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex vi = v[i];
    const Complex gradv_gradv = dot(dv.gradient, dv.gradient, i);
    const double gradv_gradvbar = grad_norm_squared(dv.gradient, i);
    // spectral derivatives commute with conjugation (odd factors, zero Nyquist)
    const Complex lap_vbar = std::conj(dv.laplacian[i]);
    Complex r = -c2 * (pot.laplacian[i] * vi + 2.0 * dot(pot.gradient, dv.gradient, i));
    r += (cb * cb - c2) * theta * lap_vbar * vi * vi;
    r -= 2.0 * c2 * theta * (gradv_gradv * std::conj(vi) + 2.0 * gradv_gradvbar * vi);
    out[i] = r;
  }
  return out;
}

ComplexField apply_G2(const ComplexField& v, const OperatorContext& ctx) {
  require_grid(v, ctx);
  const double theta = ctx.theta();
  const auto& pot = ctx.potential();
  ComplexField out(v.grid());

  if (!ctx.equation().is_schrodinger()) {
    const auto grad = spectral_gradient(v);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Complex vi = v[i];
      const Complex gv2 = dot(grad, grad, i);
      const Complex h = -pot.laplacian[i] * vi * vi + 6.0 * dot(pot.gradient, grad, i) * vi +
                        6.0 * (pot.value[i] + 2.0 * theta * vi * vi) * gv2;
      out[i] = 2.0 * (pot.gradient_norm_squared[i] + theta * h) * vi;
    }
    return out;
  }

  const StateDerivatives dv = spectral_derivatives(v);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex vi = v[i];
    const double abs2 = std::norm(vi);
    const double g21 = abs2 * pot.laplacian[i];
    const double g22 = abs2 * (2.0 * (std::conj(vi) * dv.laplacian[i]).real() +
                               3.0 * grad_norm_squared(dv.gradient, i)) +
                       (std::conj(vi) * std::conj(vi) * dot(dv.gradient, dv.gradient, i)).real();
    const double m = pot.gradient_norm_squared[i] - 2.0 * theta * (g21 + theta * g22);
    out[i] = Complex(0.0, -2.0) * m * vi;
  }
  return out;
}

PhaseTerms phase_terms(const ComplexField& v, const OperatorContext& ctx) {
  require_grid(v, ctx);
  if (!ctx.equation().is_schrodinger()) {
    throw std::invalid_argument("modified phase is defined for the Schrodinger equation only");
  }
  const auto& grid = v.grid();
  const double theta = ctx.theta();
  const auto& lapV = ctx.potential().laplacian;
  const StateDerivatives dv = spectral_derivatives(v);

  PhaseTerms t{RealField(grid), RealField(grid), RealField(grid),
               RealField(grid), RealField(grid), RealField(grid)};
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex vb = std::conj(v[i]);
    t.g1[i] = std::norm(v[i]);
    t.g2[i] = (vb * dv.laplacian[i]).real();
    t.g3[i] = grad_norm_squared(dv.gradient, i);
    t.g4[i] = (vb * vb * dot(dv.gradient, dv.gradient, i)).real();
    t.g5[i] = theta * (2.0 * t.g2[i] + 3.0 * t.g3[i]);
    t.g6[i] = t.g1[i] * (lapV[i] + t.g5[i]) + theta * t.g4[i];
  }
  return t;
}

RealField modified_phase(const ComplexField& v, const OperatorContext& ctx, double beta1,
                         double beta2, double tau) {
  const auto& pot = ctx.potential();
  const double theta = ctx.theta();
  require_grid(v, ctx);
  if (!ctx.equation().is_schrodinger()) {
    throw std::invalid_argument("modified phase is defined for the Schrodinger equation only");
  }
  RealField f(v.grid());
  if (beta2 == 0.0 || tau == 0.0) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      f[i] = beta1 * (pot.value[i] + theta * std::norm(v[i]));
    }
    return f;
  }
  const PhaseTerms t = phase_terms(v, ctx);
  const double w = beta2 * tau * tau;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f1 = pot.value[i] + theta * t.g1[i];
    const double f2 = 2.0 * pot.gradient_norm_squared[i] - 4.0 * theta * t.g6[i];
    f[i] = beta1 * f1 + w * f2;
  }
  return f;
}

ComplexField gateaux_fd(OperatorId op, const ComplexField& v, const ComplexField& w,
                        const OperatorContext& ctx, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const auto apply = [&](const ComplexField& x) {
    switch (op) {
      case OperatorId::F1:
        return apply_F1(x, ctx);
      case OperatorId::F2:
        return apply_F2(x, ctx);
      case OperatorId::G1:
        return apply_G1(x, ctx);
    }
    throw std::invalid_argument("unknown operator");
  };
  ComplexField plus = v;
  ComplexField minus = v;
  for (std::size_t i = 0; i < v.size(); ++i) {
    plus[i] += eps * w[i];
    minus[i] -= eps * w[i];
  }
  ComplexField out = apply(plus) - apply(minus);
  out *= 0.5 / eps;
  return out;
}

CommutatorEstimate commutator_oracle(const ComplexField& v, const OperatorContext& ctx,
                                     double eps) {
  const ComplexField f1 = apply_F1(v, ctx);
  const ComplexField f2 = apply_F2(v, ctx);
  ComplexField g1 = gateaux_fd(OperatorId::F2, v, f1, ctx, eps) -
                    gateaux_fd(OperatorId::F1, v, f2, ctx, eps);
  const ComplexField g1_closed = apply_G1(v, ctx);
  ComplexField g2 = gateaux_fd(OperatorId::F2, v, g1_closed, ctx, eps) -
                    gateaux_fd(OperatorId::G1, v, f2, ctx, eps);
  return {std::move(g1), std::move(g2)};
}

}  // namespace splitflow
