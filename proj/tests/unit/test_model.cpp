#include <doctest.h>

#include <cmath>
#include <numbers>

#include "splitflow/spectral.hpp"
#include "support.hpp"

using namespace splitflow;
using splitflow::testing::problem;

TEST_CASE("equation kinds and names") {
  CHECK(EquationKind::schrodinger().c() == Complex(0.0, 1.0));
  CHECK(EquationKind::schrodinger().c_bar() == Complex(0.0, -1.0));
  CHECK(EquationKind::parabolic().c() == Complex(1.0));
  CHECK(EquationKind::parabolic().c_bar() == Complex(1.0));
  CHECK(parse_equation("gpe") == Equation::schrodinger);
  CHECK(parse_equation("parabolic") == Equation::parabolic);
  CHECK(to_string(Equation::parabolic) == "parabolic");
  CHECK_THROWS_AS(parse_equation("heat"), std::invalid_argument);
}

TEST_CASE("potential values and derivatives") {
  const auto g = build_grid(1, 10.0, 16);
  SUBCASE("harmonic") {
    const auto p = evaluate_potential({2, 1.0}, g);
    for (std::size_t i = 0; i < g->size(); ++i) {
      const double x = g->coordinate(i, 0);
      CHECK(p.value[i] == doctest::Approx(x * x));
      CHECK(p.gradient[0][i] == doctest::Approx(2 * x));
      CHECK(p.laplacian[i] == doctest::Approx(2.0));
      CHECK(p.gradient_norm_squared[i] == doctest::Approx(4 * x * x));
    }
  }
  SUBCASE("quartic with negative prefactor") {
    const auto p = evaluate_potential({4, -1.0}, g);
    for (std::size_t i = 0; i < g->size(); ++i) {
      const double x = g->coordinate(i, 0);
      CHECK(p.value[i] == doctest::Approx(-std::pow(x, 4) / 24));
      CHECK(p.gradient[0][i] == doctest::Approx(-std::pow(x, 3) / 6));
      CHECK(p.laplacian[i] == doctest::Approx(-x * x / 2));
    }
  }
  CHECK_THROWS_AS(evaluate_potential({3, 1.0}, g), std::invalid_argument);
}

TEST_CASE("spectral gradient of a windowed potential matches the product rule") {
  // V itself is not periodic on the box; multiplied by a Gaussian window it is
  // smooth and periodic to roundoff, so the spectral derivative is exact.
  const auto g = build_grid(1, 10.0, 512);
  const auto p = evaluate_potential({2, 1.0}, g);
  const ComplexField w = gaussian_initial_state(g);
  ComplexField vw(g);
  ComplexField expected(g);
  for (std::size_t i = 0; i < g->size(); ++i) {
    const double x = g->coordinate(i, 0);
    vw[i] = p.value[i] * w[i];
    expected[i] = p.gradient[0][i] * w[i] + p.value[i] * (-x * w[i]);
  }
  const ComplexField d = spectral_gradient(vw)[0];
  double err = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (std::abs(g->coordinate(i, 0)) <= 5.0) err = std::max(err, std::abs(d[i] - expected[i]));
  }
  CHECK(err < 1e-8);
}

TEST_CASE("Gaussian initial state norm") {
  CHECK(discrete_l2(gaussian_initial_state(build_grid(1, 10.0, 512))) ==
        doctest::Approx(std::pow(std::numbers::pi, 0.25)).epsilon(1e-10));
  CHECK(discrete_l2(gaussian_initial_state(build_grid(2, 10.0, 64))) ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-10));
}

TEST_CASE("exact linear solution satisfies the equation") {
  for (Equation eq : {Equation::schrodinger, Equation::parabolic}) {
    const ProblemSpec p = problem(eq, 0.0);
    const OperatorContext ctx(p);
    const double t = 0.3;
    const double h = 1e-4;
    const ComplexField u = exact_linear_solution(p, t);
    // d/dt by central difference of the closed form, rhs by the operators
    ComplexField dudt = exact_linear_solution(p, t + h) - exact_linear_solution(p, t - h);
    dudt *= 1.0 / (2 * h);
    const ComplexField rhs = apply_F1(u, ctx) + apply_F2(u, ctx);
    CHECK(splitflow::testing::relative_error(dudt, rhs) < 1e-7);
  }
}

TEST_CASE("exact solution values") {
  const ProblemSpec s = problem(Equation::schrodinger, 0.0);
  const ComplexField u = exact_linear_solution(s, 1.0);
  const std::size_t mid = 128;
  CHECK(std::abs(u[mid] - std::exp(Complex(0.0, -1.0))) < 1e-15);
  const ProblemSpec par = problem(Equation::parabolic, 0.0);
  CHECK(exact_linear_solution(par, 1.0)[mid].real() == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("exact solution preconditions") {
  CHECK_THROWS_AS(exact_linear_solution(problem(Equation::schrodinger, 1.0), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(exact_linear_solution(problem(Equation::parabolic, 0.0, 256, 1, 2, 1.0), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(exact_linear_solution(problem(Equation::schrodinger, 0.0, 256, 1, 4), 1.0),
                  std::invalid_argument);
}
