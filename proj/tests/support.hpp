#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "splitflow/diagnostics.hpp"
#include "splitflow/model.hpp"
#include "splitflow/operators.hpp"
#include "splitflow/sample_fields.hpp"

namespace splitflow::testing {

inline ProblemSpec problem(Equation eq, double theta, int points = 256, int dim = 1,
                           int degree = 2, double prefactor = 0.0) {
  ProblemSpec p;
  p.equation = EquationKind::of(eq);
  p.potential.degree = degree;
  p.potential.prefactor = prefactor == 0.0 ? matched_prefactor(eq) : prefactor;
  p.theta = theta;
  p.grid = build_grid(dim, 10.0, points);
  p.final_time = 1.0;
  return p;
}

inline ComplexField tabulate(const GridPtr& grid, const std::function<Complex(double)>& f) {
  ComplexField out(grid);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(grid->coordinate(i, 0));
  return out;
}

inline double relative_error(const ComplexField& a, const ComplexField& b) {
  return discrete_l2_error(a, b) / discrete_l2(b);
}

/// Classical RK4 for u' = rhs(u), written out independently of the library
/// flows so it can serve as a brute-force oracle.
inline ComplexField rk4(const ComplexField& u0, double t, int steps,
                        const std::function<ComplexField(const ComplexField&)>& rhs) {
  const double h = t / steps;
  ComplexField u = u0;
  for (int n = 0; n < steps; ++n) {
    const ComplexField k1 = rhs(u);
    const ComplexField k2 = rhs(u + (0.5 * h) * k1);
    const ComplexField k3 = rhs(u + (0.5 * h) * k2);
    const ComplexField k4 = rhs(u + h * k3);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

}  // namespace splitflow::testing
