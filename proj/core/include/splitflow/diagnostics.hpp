#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splitflow/operators.hpp"

namespace splitflow {

/// sqrt(sum |u_i|^2 dx^d).
double discrete_l2(const ComplexField& u);
/// discrete_l2(u - v); throws std::invalid_argument on a grid mismatch.
double discrete_l2_error(const ComplexField& u, const ComplexField& v);

/// E = int (-Lap psi + V psi + theta |psi|^2 psi) conj(psi) dx by the periodic
/// trapezoidal rule. Schrodinger only; returns the real part.
double energy(const ComplexField& psi, const OperatorContext& ctx);

/// H = int |grad psi|^2 + V |psi|^2 + theta/2 |psi|^4 dx, the quantity the
/// Schrodinger flow conserves exactly. `energy` weights the quartic term by
/// theta instead, so it oscillates with the solution whenever theta != 0.
double hamiltonian(const ComplexField& psi, const OperatorContext& ctx);

/// Points whose error is below this multiple of the accuracy floor are
/// treated as saturated and excluded from order fits.
inline constexpr double kSaturationFactor = 50.0;

struct OrderFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points_used = 0;
};

/// Least-squares slope of log(error) against log(tau). Non-finite or
/// non-positive errors and errors below kSaturationFactor * floor are skipped.
/// Throws InsufficientDataError with fewer than three usable points.
OrderFit observed_order(std::span<const double> taus, std::span<const double> errors,
                        double floor = 0.0);

/// Exact flow of u' = b |u|^2 u: |u|^2 = |u0|^2 / (1 - 2 Re(b) tau |u0|^2) with
/// phase advance Im(b)/(2 Re(b)) log(1 / (1 - 2 Re(b) tau |u0|^2)).
/// Throws BlowUpError when the denominator is not positive.
Complex scalar_cubic_flow(Complex u0, Complex b, double tau);

/// Flow of the holomorphic u' = b u^3, u0 / sqrt(1 - 2 b tau u0^2), continued
/// to complex b (principal branch; valid while the radicand stays near 1).
Complex holomorphic_cubic_flow(Complex u0, Complex b, double tau);

enum class ProbeFlow { modulus_cubic, holomorphic_cubic };

struct ProbeResult {
  std::vector<double> taus;
  std::vector<double> local_errors;
  std::vector<double> global_errors;
  std::optional<double> local_slope;
  std::optional<double> global_slope;
};

/// One step of the four-stage composition b1, b2, b2, b1 (b2 = 1/2 - b1) of
/// the scalar cubic flow.
Complex probe_step(Complex u0, double tau, Complex b1, ProbeFlow flow = ProbeFlow::modulus_cubic);

/// Local error (one step against the exact real flow) and global error at
/// `final_time` for each tau, with fitted slopes when enough points resolve.
/// By default b1 is the first nonlinear coefficient of yoshida_complex.
ProbeResult order_reduction_probe(double u0, std::span<const double> taus,
                                  double final_time = 0.5,
                                  ProbeFlow flow = ProbeFlow::modulus_cubic,
                                  std::optional<Complex> b1 = std::nullopt);

struct EnergySeries {
  std::vector<long> steps;
  std::vector<double> times;
  std::vector<double> energies;
  /// E(t_n) - min_l E(t_l)
  std::vector<double> deviations;
};

EnergySeries make_energy_series(std::vector<long> steps, std::vector<double> times,
                                std::vector<double> energies);

enum class RunStatus { ok, unstable };

struct ConvergencePoint {
  double tau = 0.0;
  long steps = 0;
  double global_error = 0.0;
  double runtime_seconds = 0.0;
  RunStatus status = RunStatus::ok;
  /// error below the saturation threshold; excluded from the fit
  bool saturated = false;
  std::string note;
};

struct MethodSeries {
  std::string method;
  std::vector<ConvergencePoint> points;
  std::optional<double> fitted_order;
};

struct CaseDescriptor {
  Equation equation = Equation::schrodinger;
  int degree = 2;
  double prefactor = 1.0;
  double theta = 0.0;
  int dim = 1;
  int points_per_dim = 256;
};

struct ConvergenceReport {
  CaseDescriptor descriptor;
  /// accuracy floor of the reference solution used for saturation filtering
  double error_floor = 0.0;
  std::vector<MethodSeries> methods;

  const MethodSeries* find(std::string_view method) const;
};

}  // namespace splitflow
