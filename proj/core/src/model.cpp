#include "splitflow/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace splitflow {

std::string_view to_string(Equation e) {
  return e == Equation::schrodinger ? "schrodinger" : "parabolic";
}

Equation parse_equation(std::string_view name) {
  if (name == "schrodinger" || name == "gpe") return Equation::schrodinger;
  if (name == "parabolic") return Equation::parabolic;
  throw std::invalid_argument("unknown equation '" + std::string(name) + "'");
}

double PotentialSpec::scale() const {
  switch (degree) {
    case 2:
      return 1.0;
    case 4:
      return 1.0 / 24.0;
    default:
      throw std::invalid_argument("potential degree must be 2 or 4");
  }
}

void ProblemSpec::validate() const {
  if (!grid) throw std::invalid_argument("problem has no grid");
  if (!(final_time > 0.0)) throw std::invalid_argument("final time must be positive");
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
  (void)potential.scale();
}

double matched_prefactor(Equation e) { return e == Equation::schrodinger ? 1.0 : -1.0; }

PotentialData evaluate_potential(const PotentialSpec& spec, const GridPtr& grid) {
  const double coeff = spec.prefactor * spec.scale();
  const int q = spec.degree;
  const int d = grid->dim();

  PotentialData data{RealField(grid), {}, RealField(grid), RealField(grid)};
  for (int axis = 0; axis < d; ++axis) data.gradient.emplace_back(grid);

  for (std::size_t i = 0; i < grid->size(); ++i) {
    double v = 0.0;
    double lap = 0.0;
    double grad2 = 0.0;
    for (int axis = 0; axis < d; ++axis) {
      const double x = grid->coordinate(i, axis);
      v += std::pow(x, q);
      lap += q * (q - 1) * std::pow(x, q - 2);
      const double g = coeff * q * std::pow(x, q - 1);
      data.gradient[axis][i] = g;
      grad2 += g * g;
    }
    data.value[i] = coeff * v;
    data.laplacian[i] = coeff * lap;
    data.gradient_norm_squared[i] = grad2;
  }
  return data;
}

ComplexField gaussian_initial_state(const GridPtr& grid) {
  ComplexField u(grid);
  for (std::size_t i = 0; i < grid->size(); ++i) u[i] = std::exp(-0.5 * grid->radius_squared(i));
  return u;
}

ComplexField exact_linear_solution(const ProblemSpec& problem, double t) {
  problem.validate();
  const Equation tag = problem.equation.tag();
  if (problem.theta != 0.0) throw std::invalid_argument("exact solution requires theta = 0");
  if (problem.potential.degree != 2) throw std::invalid_argument("exact solution requires q = 2");
  if (problem.potential.prefactor != matched_prefactor(tag)) {
    throw std::invalid_argument("exact solution requires C0 = " +
                                std::to_string(static_cast<int>(matched_prefactor(tag))) + " for " +
                                std::string(to_string(tag)));
  }
  // -Lap u0 + |x|^2 u0 = d u0, so the Gaussian only picks up a scalar factor.
  const double d = problem.grid->dim();
  const Complex factor = tag == Equation::schrodinger ? std::exp(Complex(0.0, -d * t))
                                                      : Complex(std::exp(-d * t));
  ComplexField u = gaussian_initial_state(problem.grid);
  u *= factor;
  return u;
}

}  // namespace splitflow
