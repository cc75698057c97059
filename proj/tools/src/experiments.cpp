#include "splitflow_app/experiments.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "splitflow/errors.hpp"
#include "splitflow/integrator.hpp"
#include "splitflow/sample_fields.hpp"

namespace splitflow::app {

namespace {

constexpr double kRoundoffFloor = 1e-13;
constexpr int kReferenceRefinement = 10;

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct Reference {
  ComplexField state;
  double floor = 0.0;
};

Reference make_reference(const ExperimentConfig& config, const ProblemSpec& problem,
                         const OperatorContext& ctx, long finest_steps) {
  const bool exact_ok = problem.theta == 0.0 && problem.potential.degree == 2 &&
                        problem.potential.prefactor == matched_prefactor(problem.equation.tag());
  const bool use_exact = config.reference == ReferencePolicy::exact ||
                         (config.reference == ReferencePolicy::automatic && exact_ok);
  if (use_exact) {
    Reference r{exact_linear_solution(problem, problem.final_time), 0.0};
    r.floor = kRoundoffFloor * discrete_l2(r.state);
    return r;
  }

  const ComplexField initial = gaussian_initial_state(problem.grid);
  const auto scheme = make_scheme("chin_modified");
  const FlowStrategy strategy = default_strategy(problem.equation.tag());
  const long fine = kReferenceRefinement * finest_steps;
  auto fine_run = integrate(initial, IntegrationRun::make(problem, scheme, fine, strategy), ctx);
  auto half_run =
      integrate(initial, IntegrationRun::make(problem, scheme, fine / 2, strategy), ctx);
  if (fine_run.status != RunStatus::ok || half_run.status != RunStatus::ok) {
    throw std::runtime_error("reference solution failed: " + fine_run.message + half_run.message);
  }
  // fourth order: e(2h) - e(h) ~ 15 e(h)
  const double estimate = discrete_l2_error(fine_run.final_state, half_run.final_state) / 15.0;
  Reference r{std::move(fine_run.final_state), 0.0};
  r.floor = std::max(estimate, kRoundoffFloor * discrete_l2(r.state));
  return r;
}

}  // namespace

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task) {
  std::size_t threads = workers > 0 ? static_cast<std::size_t>(workers)
                                    : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

ConvergenceReport run_convergence(const ExperimentConfig& config) {
  config.validate();
  const ProblemSpec problem = config.problem();
  const OperatorContext ctx(problem);
  const ComplexField initial = gaussian_initial_state(problem.grid);
  const std::vector<long> counts = config.step_counts();
  const FlowStrategy strategy = config.effective_strategy();

  const Reference reference = make_reference(config, problem, ctx, counts.back());

  ConvergenceReport report;
  report.descriptor = {config.equation, config.degree, config.effective_prefactor(),
                       config.theta,    config.dim,    config.points_per_dim};
  report.error_floor = reference.floor;
  for (const auto& m : config.methods) {
    MethodSeries series{m, std::vector<ConvergencePoint>(counts.size()), std::nullopt};
    report.methods.push_back(std::move(series));
  }

  const std::size_t per_method = counts.size();
  parallel_for(config.methods.size() * per_method, config.workers, [&](std::size_t task) {
    const std::size_t mi = task / per_method;
    // largest tau first within a method
    const long steps = counts[task % per_method];
    auto run = IntegrationRun::make(problem, make_scheme(config.methods[mi]), steps, strategy);

    const auto start = std::chrono::steady_clock::now();
    const IntegrationResult result = integrate(initial, run, ctx);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    ConvergencePoint& p = report.methods[mi].points[task % per_method];
    p.tau = run.tau;
    p.steps = steps;
    p.runtime_seconds = elapsed;
    p.status = result.status;
    if (result.status == RunStatus::ok) {
      p.global_error = discrete_l2_error(result.final_state, reference.state);
      p.saturated = p.global_error < kSaturationFactor * reference.floor;
    } else {
      p.global_error = std::numeric_limits<double>::quiet_NaN();
      p.note = result.message;
    }
  });

  for (auto& series : report.methods) {
    std::vector<double> taus;
    std::vector<double> errors;
    for (const auto& p : series.points) {
      if (p.status != RunStatus::ok) continue;
      taus.push_back(p.tau);
      errors.push_back(p.global_error);
    }
    try {
      series.fitted_order = observed_order(taus, errors, reference.floor).slope;
    } catch (const InsufficientDataError&) {
      series.fitted_order.reset();
    }
  }
  return report;
}

std::vector<MethodEnergy> run_energy(const ExperimentConfig& config) {
  config.validate();
  const ProblemSpec problem = config.problem();
  const OperatorContext ctx(problem);
  const ComplexField initial = gaussian_initial_state(problem.grid);
  const long steps = std::max(1L, std::lround(config.final_time / config.tau));

  std::vector<MethodEnergy> runs(config.methods.size());
  parallel_for(runs.size(), config.workers, [&](std::size_t i) {
    auto run = IntegrationRun::make(problem, make_scheme(config.methods[i]), steps,
                                    config.effective_strategy());
    run.observers.push_back({"energy", config.stride,
                             [](const ComplexField& u, const OperatorContext& c) {
                               return energy(u, c);
                             }});
    const auto result = integrate(initial, run, ctx);
    std::vector<long> idx;
    std::vector<double> times;
    std::vector<double> values;
    for (const auto& s : result.samples) {
      idx.push_back(s.step);
      times.push_back(s.time);
      values.push_back(s.value);
    }
    runs[i] = {config.methods[i], make_energy_series(std::move(idx), std::move(times),
                                                     std::move(values)),
               result.status};
  });
  return runs;
}

bool ValidationReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

ValidationReport run_validate(const ExperimentConfig& config) {
  config.validate();
  ValidationReport report;
  const auto check = [&](std::string name, double value, double tol) {
    report.checks.push_back({std::move(name), value, tol, std::isfinite(value) && value < tol});
  };

  const ProblemSpec problem = config.problem();
  const OperatorContext ctx(problem);
  const ComplexField initial = gaussian_initial_state(problem.grid);
  const bool schrodinger = problem.equation.is_schrodinger();

  {
    const long steps = std::max(1L, std::lround(problem.final_time / config.tau_min));
    auto run = IntegrationRun::make(problem, make_scheme("chin_modified"), steps,
                                    default_strategy(problem.equation.tag()));
    const auto result = integrate(initial, run, ctx);
    const double err =
        result.status == RunStatus::ok
            ? discrete_l2_error(result.final_state, exact_linear_solution(problem, problem.final_time))
            : std::numeric_limits<double>::infinity();
    check("exact_solution_error", err, 1e-8);
  }

  SampleFieldOptions opts;
  opts.seed = config.seed;
  opts.real_valued = !schrodinger;
  {
    SampleFieldOptions band = opts;
    band.localized = false;
    const ComplexField v = random_smooth_field(problem.grid, band);
    const ComplexField g2 = apply_G2(v, ctx);
    const Complex factor = 2.0 * problem.equation.c_bar() * std::norm(problem.equation.c());
    ComplexField expected(v.grid());
    for (std::size_t i = 0; i < v.size(); ++i) {
      expected[i] = factor * ctx.potential().gradient_norm_squared[i] * v[i];
    }
    check("linear_commutator_reduction", discrete_l2_error(g2, expected) / discrete_l2(v), 1e-10);
  }

  ProblemSpec nonlinear = problem;
  nonlinear.theta = 1.0;
  nonlinear.potential.prefactor = 1.0;
  const OperatorContext nctx(nonlinear);
  const ComplexField v = random_smooth_field(problem.grid, opts);
  {
    const ComplexField closed = apply_G2(v, nctx);
    const auto oracle = commutator_oracle(v, nctx, 1e-5);
    check("commutator_fd_oracle", discrete_l2_error(closed, oracle.g2) / discrete_l2(closed), 1e-4);
  }

  if (schrodinger) {
    const double b1 = 2.0 / 3.0;
    const double b2 = -1.0 / 72.0;
    const double tau = 0.05;
    const ComplexField out = gpe_modified_flow(v, nctx, b1, b2, tau);
    const RealField before = modified_phase(v, nctx, b1, b2, tau);
    const RealField after = modified_phase(out, nctx, b1, b2, tau);
    check("invariance_principle",
          discrete_l2(to_complex(after) - to_complex(before)), 1e-8);
    double modulus = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      modulus = std::max(modulus, std::abs(std::abs(out[i]) - std::abs(v[i])));
    }
    check("pointwise_modulus", modulus, 1e-13);

    auto run = IntegrationRun::make(nonlinear, make_scheme("chin_modified"), 100,
                                    default_strategy(Equation::schrodinger));
    run.tau = 1e-2;
    run.problem.final_time = 1.0;
    const auto result = integrate(v, run, nctx);
    const double drift =
        result.status == RunStatus::ok
            ? std::abs(discrete_l2(result.final_state) - discrete_l2(v)) / discrete_l2(v)
            : std::numeric_limits<double>::infinity();
    check("norm_conservation", drift, 1e-10);
  }
  return report;
}

ProbeResult run_order_reduction(const ExperimentConfig& config) {
  config.validate();
  std::vector<double> taus = config.taus;
  if (taus.empty()) taus = {0.02, 0.01, 0.005, 0.0025};
  return order_reduction_probe(config.probe_u0, taus, config.probe_final_time);
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report,
                           bool deterministic) {
  const auto& d = report.descriptor;
  out << "method,equation,q,C0,theta,dim,points_per_dim,tau,global_error,runtime_seconds,status\n";
  out << "# schema=splitflow-convergence/1\n";
  out << "# error_floor=" << number(report.error_floor)
      << " saturation_factor=" << number(kSaturationFactor) << "\n";
  for (const auto& series : report.methods) {
    out << "# fit method=" << series.method << " order="
        << (series.fitted_order ? number(*series.fitted_order) : std::string("nan")) << "\n";
  }
  for (const auto& series : report.methods) {
    for (const auto& p : series.points) {
      out << series.method << ',' << to_string(d.equation) << ',' << d.degree << ','
          << number(d.prefactor) << ',' << number(d.theta) << ',' << d.dim << ','
          << d.points_per_dim << ',' << number(p.tau) << ','
          << (p.status == RunStatus::ok ? number(p.global_error) : std::string()) << ','
          << number(deterministic ? 0.0 : p.runtime_seconds) << ','
          << (p.status == RunStatus::ok ? "ok" : "unstable") << '\n';
    }
  }
}

void write_energy_csv(std::ostream& out, const std::vector<MethodEnergy>& runs) {
  out << "step,time,energy,deviation\n";
  out << "# schema=splitflow-energy/1\n";
  for (const auto& r : runs) {
    out << "# method=" << r.method
        << " status=" << (r.status == RunStatus::ok ? "ok" : "unstable") << "\n";
    const auto& s = r.series;
    for (std::size_t i = 0; i < s.energies.size(); ++i) {
      out << s.steps[i] << ',' << number(s.times[i]) << ',' << number(s.energies[i]) << ','
          << number(s.deviations[i]) << '\n';
    }
  }
}

void write_order_reduction_csv(std::ostream& out, const ProbeResult& probe) {
  out << "tau,local_error,global_error\n";
  out << "# schema=splitflow-order-reduction/1\n";
  out << "# local_slope=" << (probe.local_slope ? number(*probe.local_slope) : "nan")
      << " global_slope=" << (probe.global_slope ? number(*probe.global_slope) : "nan") << "\n";
  for (std::size_t i = 0; i < probe.taus.size(); ++i) {
    out << number(probe.taus[i]) << ',' << number(probe.local_errors[i]) << ','
        << number(probe.global_errors[i]) << '\n';
  }
}

void write_validation_report(std::ostream& out, const ValidationReport& report) {
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << number(c.value)
        << " tolerance=" << number(c.tolerance) << '\n';
  }
}

}  // namespace splitflow::app
