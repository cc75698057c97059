#include <doctest.h>

#include <cmath>

#include "splitflow/integrator.hpp"
#include "support.hpp"

using namespace splitflow;
using splitflow::testing::problem;

TEST_CASE("run construction and validation") {
  const ProblemSpec p = problem(Equation::schrodinger, 1.0, 64);
  const auto run = IntegrationRun::make(p, make_scheme("strang"), 40,
                                        default_strategy(Equation::schrodinger));
  CHECK(run.tau == doctest::Approx(0.025));
  CHECK_NOTHROW(run.validate());

  IntegrationRun bad = run;
  bad.tau = 0.03;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  const auto complex_closed = IntegrationRun::make(p, make_scheme("yoshida_complex"), 10,
                                                   default_strategy(Equation::schrodinger));
  CHECK_THROWS_AS(complex_closed.validate(), std::invalid_argument);
  const auto complex_rk4 = IntegrationRun::make(p, make_scheme("yoshida_complex"), 10,
                                                {FlowStrategyKind::rk4_combined, 1});
  CHECK_NOTHROW(complex_rk4.validate());

  const auto wrong_kind = IntegrationRun::make(p, make_scheme("lie"), 10,
                                               {FlowStrategyKind::strang_composite, 1});
  CHECK_THROWS_AS(wrong_kind.validate(), std::invalid_argument);
}

TEST_CASE("observers sample on their stride and at the end") {
  const ProblemSpec p = problem(Equation::schrodinger, 1.0, 64);
  auto run = IntegrationRun::make(p, make_scheme("chin_modified"), 25,
                                  default_strategy(Equation::schrodinger));
  run.observers.push_back({"norm", 10, [](const ComplexField& u, const OperatorContext&) {
                             return discrete_l2(u);
                           }});
  const auto result = integrate(gaussian_initial_state(p.grid), run);
  REQUIRE(result.status == RunStatus::ok);
  std::vector<long> steps;
  for (const auto& s : result.samples) steps.push_back(s.step);
  CHECK(steps == std::vector<long>{0, 10, 20, 25});
  CHECK(result.samples.back().time == doctest::Approx(1.0));
  for (const auto& s : result.samples) CHECK(s.value == doctest::Approx(result.samples[0].value));
}

TEST_CASE("linear Schrodinger convergence against the exact solution") {
  const ProblemSpec p = problem(Equation::schrodinger, 0.0);
  const OperatorContext ctx(p);
  const ComplexField u0 = gaussian_initial_state(p.grid);
  const ComplexField exact = exact_linear_solution(p, 1.0);
  for (const auto& [name, order] : std::vector<std::pair<std::string, double>>{
           {"lie", 1.0}, {"strang", 2.0}, {"chin_modified", 4.0}, {"yoshida", 4.0}}) {
    std::vector<double> errs;
    for (long n : {20L, 40L}) {
      const auto run = IntegrationRun::make(p, make_scheme(name), n,
                                            default_strategy(Equation::schrodinger));
      errs.push_back(discrete_l2_error(integrate(u0, run, ctx).final_state, exact));
    }
    CAPTURE(name);
    CHECK(std::log2(errs[0] / errs[1]) == doctest::Approx(order).epsilon(0.1));
  }
}

TEST_CASE("Schrodinger norm is conserved by every real scheme") {
  const ProblemSpec p = problem(Equation::schrodinger, 1.0, 128);
  const OperatorContext ctx(p);
  const ComplexField u0 = gaussian_initial_state(p.grid);
  for (const char* name : {"lie", "strang", "yoshida", "chin_modified"}) {
    const auto run = IntegrationRun::make(p, make_scheme(name), 50,
                                          default_strategy(Equation::schrodinger));
    const auto r = integrate(u0, run, ctx);
    CAPTURE(name);
    CHECK(std::abs(discrete_l2(r.final_state) - discrete_l2(u0)) < 1e-12);
  }
}

TEST_CASE("instability becomes a status, not an exception") {
  const ProblemSpec p = problem(Equation::parabolic, 1.0, 256, 1, 4);
  auto run = IntegrationRun::make(p, make_scheme("chin_modified"), 10,
                                  {FlowStrategyKind::rk4_combined, 1});
  const auto r = integrate(gaussian_initial_state(p.grid), run);
  CHECK(r.status == RunStatus::unstable);
  CHECK_FALSE(r.message.empty());
}

TEST_CASE("backward heat stages are reported") {
  const ProblemSpec p = problem(Equation::parabolic, 1.0, 64);
  const auto u0 = gaussian_initial_state(p.grid);
  const auto yoshida = IntegrationRun::make(p, make_scheme("yoshida"), 100,
                                            default_strategy(Equation::parabolic));
  CHECK(integrate(u0, yoshida).backward_diffusion);
  const auto chin = IntegrationRun::make(p, make_scheme("chin_modified"), 100,
                                         default_strategy(Equation::parabolic));
  CHECK_FALSE(integrate(u0, chin).backward_diffusion);
}
