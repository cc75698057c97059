#include "splitflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "splitflow/errors.hpp"
#include "splitflow/schemes.hpp"

namespace splitflow {

double discrete_l2(const ComplexField& u) {
  double s = 0.0;
  for (const auto& v : u) s += std::norm(v);
  return std::sqrt(s * u.grid()->cell_volume());
}

double discrete_l2_error(const ComplexField& u, const ComplexField& v) {
  if (!u.grid() || !v.grid() || !same_layout(*u.grid(), *v.grid())) {
    throw std::invalid_argument("discrete L2 error of fields on different grids");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::norm(u[i] - v[i]);
  return std::sqrt(s * u.grid()->cell_volume());
}

double energy(const ComplexField& psi, const OperatorContext& ctx) {
  if (!ctx.equation().is_schrodinger()) {
    throw std::invalid_argument("energy is defined for the Schrodinger equation");
  }
  const ComplexField lap = spectral_laplacian(psi);
  const auto& V = ctx.potential().value;
  const double theta = ctx.theta();
  Complex s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const Complex h = -lap[i] + (V[i] + theta * std::norm(psi[i])) * psi[i];
    s += h * std::conj(psi[i]);
  }
  return s.real() * psi.grid()->cell_volume();
}

double hamiltonian(const ComplexField& psi, const OperatorContext& ctx) {
  if (!ctx.equation().is_schrodinger()) {
    throw std::invalid_argument("hamiltonian is defined for the Schrodinger equation");
  }
  const auto grad = spectral_gradient(psi);
  const auto& V = ctx.potential().value;
  const double theta = ctx.theta();
  double s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double rho = std::norm(psi[i]);
    for (const auto& g : grad) s += std::norm(g[i]);
    s += V[i] * rho + 0.5 * theta * rho * rho;
  }
  return s * psi.grid()->cell_volume();
}

OrderFit observed_order(std::span<const double> taus, std::span<const double> errors,
                        double floor) {
  if (taus.size() != errors.size()) throw std::invalid_argument("tau/error length mismatch");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double e = errors[i];
    if (!std::isfinite(e) || !(e > 0.0) || !(taus[i] > 0.0)) continue;
    if (e < kSaturationFactor * floor) continue;
    xs.push_back(std::log(taus[i]));
    ys.push_back(std::log(e));
  }
  if (xs.size() < 3) {
    throw InsufficientDataError("order fit needs at least three usable points, got " +
                                std::to_string(xs.size()));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InsufficientDataError("order fit needs distinct step sizes");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx, xs.size()};
}

Complex scalar_cubic_flow(Complex u0, Complex b, double tau) {
  const double r0 = std::norm(u0);
  const double s = 2.0 * b.real() * tau * r0;
  const double denom = 1.0 - s;
  if (!(denom > 0.0)) throw BlowUpError("scalar cubic flow blows up", tau);
  double phase;
  if (b.real() != 0.0) {
    phase = -b.imag() / (2.0 * b.real()) * std::log1p(-s);
  } else {
    phase = b.imag() * tau * r0;
  }
  return u0 / std::sqrt(denom) * std::polar(1.0, phase);
}

Complex holomorphic_cubic_flow(Complex u0, Complex b, double tau) {
  const Complex radicand = 1.0 - 2.0 * b * tau * u0 * u0;
  if (radicand.real() <= 0.0) throw BlowUpError("holomorphic cubic flow leaves its branch", tau);
  return u0 / std::sqrt(radicand);
}

Complex probe_step(Complex u0, double tau, Complex b1, ProbeFlow flow) {
  const Complex b2 = 0.5 - b1;
  const auto stage = [&](Complex u, Complex b) {
    return flow == ProbeFlow::modulus_cubic ? scalar_cubic_flow(u, b, tau)
                                            : holomorphic_cubic_flow(u, b, tau);
  };
  Complex u = stage(u0, b1);
  u = stage(u, b2);
  u = stage(u, b2);
  return stage(u, b1);
}

ProbeResult order_reduction_probe(double u0, std::span<const double> taus, double final_time,
                                  ProbeFlow flow, std::optional<Complex> b1) {
  if (taus.empty()) throw InsufficientDataError("probe needs at least one step size");
  const Complex coeff = b1.value_or(0.5 - yoshida_complex_b2());
  ProbeResult r;
  const Complex exact_final = scalar_cubic_flow(u0, 1.0, final_time);
  for (const double tau : taus) {
    if (!(tau > 0.0)) throw std::invalid_argument("probe step sizes must be positive");
    r.taus.push_back(tau);
    r.local_errors.push_back(
        std::abs(probe_step(u0, tau, coeff, flow) - scalar_cubic_flow(u0, 1.0, tau)));
    const long steps = std::lround(final_time / tau);
    Complex u = u0;
    for (long n = 0; n < steps; ++n) u = probe_step(u, tau, coeff, flow);
    r.global_errors.push_back(std::abs(u - exact_final));
  }
  try {
    r.local_slope = observed_order(r.taus, r.local_errors).slope;
  } catch (const InsufficientDataError&) {
  }
  try {
    r.global_slope = observed_order(r.taus, r.global_errors).slope;
  } catch (const InsufficientDataError&) {
  }
  return r;
}

EnergySeries make_energy_series(std::vector<long> steps, std::vector<double> times,
                                std::vector<double> energies) {
  if (steps.size() != times.size() || times.size() != energies.size()) {
    throw std::invalid_argument("energy series length mismatch");
  }
  EnergySeries s{std::move(steps), std::move(times), std::move(energies), {}};
  if (s.energies.empty()) return s;
  const double lo = *std::min_element(s.energies.begin(), s.energies.end());
  s.deviations.reserve(s.energies.size());
  for (const double e : s.energies) s.deviations.push_back(e - lo);
  return s;
}

const MethodSeries* ConvergenceReport::find(std::string_view method) const {
  for (const auto& m : methods) {
    if (m.method == method) return &m;
  }
  return nullptr;
}

}  // namespace splitflow
