// Acceptance gate: one line per criterion, exit status 1 if any fails.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "splitflow/flows.hpp"
#include "splitflow/integrator.hpp"
#include "splitflow/sample_fields.hpp"
#include "splitflow_app/experiments.hpp"

using namespace splitflow;
using namespace splitflow::app;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool within(const std::optional<double>& v, double target, double tol) {
  return v && std::abs(*v - target) <= tol;
}

std::string slope(const ConvergenceReport& r, const std::string& method) {
  const auto* s = r.find(method);
  return method + "=" + (s && s->fitted_order ? fmt("%.3f", *s->fitted_order) : "n/a");
}

ProblemSpec make_problem(Equation eq, double theta, int degree = 2) {
  ProblemSpec p;
  p.equation = EquationKind::of(eq);
  p.potential = {degree, matched_prefactor(eq)};
  p.theta = theta;
  p.grid = build_grid(1, 10.0, 256);
  p.final_time = 1.0;
  return p;
}

ComplexField sample(const GridPtr& g, Equation eq, std::uint64_t seed, bool localized) {
  SampleFieldOptions o;
  o.seed = seed;
  o.localized = localized;
  o.real_valued = eq == Equation::parabolic;
  return random_smooth_field(g, o);
}

Outcome gpe_orders() {
  ExperimentConfig c;
  const auto start = std::chrono::steady_clock::now();
  const auto r = run_convergence(c);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = within(r.find("lie")->fitted_order, 1.0, 0.15) &&
                  within(r.find("strang")->fitted_order, 2.0, 0.15) &&
                  within(r.find("yoshida")->fitted_order, 4.0, 0.3) &&
                  within(r.find("chin_modified")->fitted_order, 4.0, 0.3) && secs < 180.0;
  return {ok, slope(r, "lie") + " " + slope(r, "strang") + " " + slope(r, "yoshida") + " " +
                  slope(r, "chin_modified") + " runtime=" + fmt("%.1fs", secs)};
}

Outcome parabolic_orders() {
  ExperimentConfig c;
  c.equation = Equation::parabolic;
  c.flow_strategy = FlowStrategyKind::strang_composite;
  const auto r = run_convergence(c);
  bool ok = within(r.find("lie")->fitted_order, 1.0, 0.15) &&
            within(r.find("strang")->fitted_order, 2.0, 0.15) &&
            within(r.find("chin_modified")->fitted_order, 4.0, 0.3);
  // real Yoshida: recorded, not fitted. Degraded means its error at the
  // largest tau exceeds chin_modified's by more than 100x.
  const auto& y = r.find("yoshida")->points;
  const auto& chin = r.find("chin_modified")->points;
  int unstable = 0;
  int degraded = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i].status == RunStatus::unstable) {
      ++unstable;
    } else if (chin[i].status == RunStatus::ok && y[i].global_error > 100 * chin[i].global_error) {
      ++degraded;
    }
  }
  ok = ok && (y.front().status == RunStatus::unstable || y.front().global_error >
                                                             100 * chin.front().global_error);
  return {ok, slope(r, "lie") + " " + slope(r, "strang") + " " + slope(r, "chin_modified") +
                  " yoshida: unstable=" + std::to_string(unstable) +
                  " degraded=" + std::to_string(degraded) + " of " + std::to_string(y.size()) +
                  " (error at tau=0.1: " + fmt("%.3g", y.front().global_error) + ")"};
}

Outcome order_reduction() {
  ExperimentConfig c;
  c.equation = Equation::parabolic;
  c.methods = {"yoshida_complex"};
  c.flow_strategy = FlowStrategyKind::rk4_combined;
  const auto r = run_convergence(c);
  ExperimentConfig probe_cfg;
  probe_cfg.command = Command::order_reduction;
  const auto probe = run_order_reduction(probe_cfg);
  const bool ok = within(r.find("yoshida_complex")->fitted_order, 2.0, 0.25) &&
                  within(probe.local_slope, 3.0, 0.2) && within(probe.global_slope, 2.0, 0.2);
  return {ok, slope(r, "yoshida_complex") + " probe local=" +
                  fmt("%.3f", probe.local_slope.value_or(NAN)) +
                  " global=" + fmt("%.3f", probe.global_slope.value_or(NAN))};
}

Outcome exact_solution() {
  bool ok = true;
  std::string detail;
  for (Equation eq : {Equation::schrodinger, Equation::parabolic}) {
    const ProblemSpec p = make_problem(eq, 0.0);
    const auto run = IntegrationRun::make(p, make_scheme("chin_modified"), 1000,
                                          default_strategy(eq));
    const auto r = integrate(gaussian_initial_state(p.grid), run);
    const double err = r.status == RunStatus::ok
                           ? discrete_l2_error(r.final_state, exact_linear_solution(p, 1.0))
                           : INFINITY;
    ok = ok && err < 1e-8;
    detail += std::string(to_string(eq)) + "=" + fmt("%.2e", err) + " ";
  }
  return {ok, detail + "(tol 1e-8)"};
}

Outcome linear_reduction() {
  bool ok = true;
  std::string detail;
  for (Equation eq : {Equation::schrodinger, Equation::parabolic}) {
    const ProblemSpec p = make_problem(eq, 0.0);
    const OperatorContext ctx(p);
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const ComplexField v = sample(p.grid, eq, seed, false);
      ComplexField expected(p.grid);
      const Complex factor = 2.0 * p.equation.c_bar() * std::norm(p.equation.c());
      for (std::size_t i = 0; i < v.size(); ++i) {
        expected[i] = factor * ctx.potential().gradient_norm_squared[i] * v[i];
      }
      worst = std::max(worst, discrete_l2_error(apply_G2(v, ctx), expected) / discrete_l2(v));
    }
    ok = ok && worst < 1e-10;
    detail += std::string(to_string(eq)) + "=" + fmt("%.2e", worst) + " ";
  }
  return {ok, detail + "(tol 1e-10)"};
}

Outcome commutator_fd() {
  bool ok = true;
  std::string detail;
  for (Equation eq : {Equation::schrodinger, Equation::parabolic}) {
    const ProblemSpec p = make_problem(eq, 1.0);
    const OperatorContext ctx(p);
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const ComplexField v = sample(p.grid, eq, seed, true);
      const ComplexField closed = apply_G2(v, ctx);
      const auto fd = commutator_oracle(v, ctx, 1e-5);
      worst = std::max(worst, discrete_l2_error(closed, fd.g2) / discrete_l2(closed));
    }
    ok = ok && worst < 1e-4;
    detail += std::string(to_string(eq)) + "=" + fmt("%.2e", worst) + " ";
  }
  return {ok, detail + "(tol 1e-4)"};
}

Outcome invariance() {
  const ProblemSpec p = make_problem(Equation::schrodinger, 1.0);
  const OperatorContext ctx(p);
  const double b1 = 2.0 / 3.0;
  const double b2 = -1.0 / 72.0;
  const double tau = 0.05;
  double phase = 0.0;
  double modulus = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ComplexField v = sample(p.grid, Equation::schrodinger, seed, true);
    const ComplexField out = gpe_modified_flow(v, ctx, b1, b2, tau);
    phase = std::max(phase, discrete_l2_error(to_complex(modified_phase(out, ctx, b1, b2, tau)),
                                              to_complex(modified_phase(v, ctx, b1, b2, tau))));
    for (std::size_t i = 0; i < v.size(); ++i) {
      modulus = std::max(modulus, std::abs(std::abs(out[i]) - std::abs(v[i])));
    }
  }
  const auto run = IntegrationRun::make(p, make_scheme("chin_modified"), 100,
                                        default_strategy(Equation::schrodinger));
  const ComplexField u0 = gaussian_initial_state(p.grid);
  const auto r = integrate(u0, run, ctx);
  const double drift = r.status == RunStatus::ok
                           ? std::abs(discrete_l2(r.final_state) - discrete_l2(u0)) / discrete_l2(u0)
                           : INFINITY;
  return {phase < 1e-8 && modulus < 1e-13 && drift < 1e-10,
          "phase=" + fmt("%.2e", phase) + " modulus=" + fmt("%.2e", modulus) +
              " norm drift=" + fmt("%.2e", drift) + " (tol 1e-8/1e-13/1e-10)"};
}

Outcome brute_force() {
  const ProblemSpec p = make_problem(Equation::schrodinger, 1.0);
  const OperatorContext ctx(p);
  const double b1 = 2.0 / 3.0;
  const double b2 = -1.0 / 72.0;
  const double tau = 0.01;
  const int substeps = 256;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const ComplexField v = sample(p.grid, Equation::schrodinger, seed, true);
    // u' = -i f(u) u with f recomputed from the current state at every stage
    const auto rhs = [&](const ComplexField& u) {
      const RealField f = modified_phase(u, ctx, b1, b2, tau);
      ComplexField d(u.grid());
      for (std::size_t i = 0; i < u.size(); ++i) d[i] = Complex(0.0, -f[i]) * u[i];
      return d;
    };
    const double h = tau / substeps;
    ComplexField u = v;
    for (int n = 0; n < substeps; ++n) {
      const ComplexField k1 = rhs(u);
      const ComplexField k2 = rhs(u + (0.5 * h) * k1);
      const ComplexField k3 = rhs(u + (0.5 * h) * k2);
      const ComplexField k4 = rhs(u + h * k3);
      u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    worst = std::max(worst, discrete_l2_error(gpe_modified_flow(v, ctx, b1, b2, tau), u));
  }
  return {worst < 1e-9, "max deviation=" + fmt("%.2e", worst) + " (tol 1e-9)"};
}

Outcome matrix_identity() {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal;
  double lo = INFINITY;
  double hi = 0.0;
  bool ok = true;
  for (int pair = 0; pair < 10; ++pair) {
    Eigen::Matrix4d B;
    Eigen::Matrix4d C;
    for (int i = 0; i < 16; ++i) {
      B(i / 4, i % 4) = normal(rng);
      C(i / 4, i % 4) = normal(rng);
    }
    // unit spectral norm, so tau itself measures the distance from the
    // asymptotic regime
    B /= Eigen::JacobiSVD<Eigen::Matrix4d>(B).singularValues()(0);
    C /= Eigen::JacobiSVD<Eigen::Matrix4d>(C).singularValues()(0);
    const auto defect = [&](double t) {
      const Eigen::Matrix4d half = (0.5 * t * B).exp();
      const Eigen::Matrix4d split = half * (t * t * t * C).exp() * half;
      return (split - (t * (B + t * t * C)).exp()).norm();
    };
    const double d1 = defect(0.2);
    const double d2 = defect(0.1);
    const double d3 = defect(0.05);
    for (double ratio : {d1 / d2, d2 / d3}) {
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      ok = ok && std::abs(ratio - 32.0) <= 0.2 * 32.0;
    }
  }
  return {ok, "halving ratios in [" + fmt("%.2f", lo) + ", " + fmt("%.2f", hi) +
                  "] (target 32 +- 20%)"};
}

Outcome strang_composite_advantage() {
  ExperimentConfig c;
  c.equation = Equation::parabolic;
  c.degree = 4;
  c.methods = {"chin_modified"};
  c.flow_strategy = FlowStrategyKind::rk4_combined;
  const auto rk4 = run_convergence(c);
  c.flow_strategy = FlowStrategyKind::strang_composite;
  const auto composite = run_convergence(c);
  const auto& a = rk4.find("chin_modified")->points;
  const auto& b = composite.find("chin_modified")->points;
  int rk4_aborts_only = 0;
  int composite_unstable = 0;
  int shared = 0;
  int worse = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i].status != RunStatus::ok) ++composite_unstable;
    if (a[i].status != RunStatus::ok && b[i].status == RunStatus::ok) ++rk4_aborts_only;
    if (a[i].status == RunStatus::ok && b[i].status == RunStatus::ok) {
      ++shared;
      if (b[i].global_error > a[i].global_error) ++worse;
    }
  }
  return {composite_unstable == 0 && rk4_aborts_only > 0 && worse == 0,
          "rk4 aborts where composite is stable: " + std::to_string(rk4_aborts_only) +
              ", composite unstable: " + std::to_string(composite_unstable) +
              ", shared taus with larger composite error: " + std::to_string(worse) + "/" +
              std::to_string(shared)};
}

Outcome energy_behaviour() {
  ExperimentConfig c;
  c.command = Command::energy;
  c.methods = {"chin_modified", "lie"};
  c.tau = 1e-3;
  c.final_time = 10.0;
  c.stride = 1;
  const auto runs = run_energy(c);
  const auto& chin = runs[0].series;
  const auto& lie = runs[1].series;
  const std::size_t n = chin.energies.size();
  const double e0 = chin.energies.front();
  double early = 0.0;
  for (std::size_t i = 0; i <= (n - 1) / 10; ++i) early = std::max(early, std::abs(chin.energies[i] - e0));
  const double drift = std::abs(chin.energies.back() - e0);
  const double chin_max = *std::max_element(chin.deviations.begin(), chin.deviations.end());
  const double lie_max = *std::max_element(lie.deviations.begin(), lie.deviations.end());
  const bool ok = runs[0].status == RunStatus::ok && runs[1].status == RunStatus::ok &&
                  n == 10001 && drift <= 10 * early && lie_max > chin_max;

  // Informational: the quartic weight of E makes it oscillate with the
  // solution, so also report the exactly conserved Hamiltonian.
  std::string conserved;
  for (const char* method : {"chin_modified", "lie"}) {
    ProblemSpec p = c.problem();
    auto run = IntegrationRun::make(p, make_scheme(method), 10000, default_strategy(p.equation.tag()));
    run.observers.push_back({"H", 100, [](const ComplexField& u, const OperatorContext& ctx) {
                               return hamiltonian(u, ctx);
                             }});
    const auto r = integrate(gaussian_initial_state(p.grid), run);
    double worst = 0.0;
    for (const auto& sample : r.samples) {
      worst = std::max(worst, std::abs(sample.value - r.samples.front().value));
    }
    conserved += std::string(" ") + method + "=" + fmt("%.2e", worst);
  }
  return {ok, "drift=" + fmt("%.3e", drift) + " early max=" + fmt("%.3e", early) +
                  " max deviation chin=" + fmt("%.6e", chin_max) + " lie=" + fmt("%.6e", lie_max) +
                  " | Hamiltonian max |H-H0|:" + conserved};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 convergence orders, 1D GPE", gpe_orders},
      {"2 convergence orders, 1D parabolic", parabolic_orders},
      {"3 order reduction, complex Yoshida", order_reduction},
      {"4 exact-solution validation", exact_solution},
      {"5 linear commutator reduction", linear_reduction},
      {"6 commutator finite-difference oracle", commutator_fd},
      {"7 invariance principle", invariance},
      {"8 closed form vs brute force", brute_force},
      {"9 matrix identity", matrix_identity},
      {"10 strang-composite advantage", strang_composite_advantage},
      {"11 energy behaviour", energy_behaviour},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s criterion %s: %s\n", o.passed ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
