#pragma once

#include <string_view>
#include <vector>

#include "splitflow/grid.hpp"

namespace splitflow {

enum class Equation { schrodinger, parabolic };

std::string_view to_string(Equation e);
/// Accepts "schrodinger" or "parabolic"; throws std::invalid_argument otherwise.
Equation parse_equation(std::string_view name);

/// du/dt = c Lap u + conj(c) (V + theta |u|^2) u with c = i (Schrodinger)
/// or c = 1 (parabolic).
class EquationKind {
 public:
  static EquationKind schrodinger() { return EquationKind(Equation::schrodinger); }
  static EquationKind parabolic() { return EquationKind(Equation::parabolic); }
  static EquationKind of(Equation tag) { return EquationKind(tag); }

  Equation tag() const noexcept { return tag_; }
  Complex c() const noexcept { return c_; }
  Complex c_bar() const noexcept { return c_bar_; }
  bool is_schrodinger() const noexcept { return tag_ == Equation::schrodinger; }

 private:
  explicit EquationKind(Equation tag)
      : tag_(tag),
        c_(tag == Equation::schrodinger ? Complex(0.0, 1.0) : Complex(1.0, 0.0)),
        c_bar_(std::conj(c_)) {}

  Equation tag_;
  Complex c_;
  Complex c_bar_;
};

/// V(x) = C0 * C_q * sum_j x_j^q with C_2 = 1 and C_4 = 1/24.
struct PotentialSpec {
  int degree = 2;
  double prefactor = 1.0;

  /// Throws std::invalid_argument for degrees other than 2 and 4.
  double scale() const;
};

struct ProblemSpec {
  EquationKind equation = EquationKind::schrodinger();
  PotentialSpec potential;
  double theta = 0.0;
  GridPtr grid;
  double final_time = 1.0;

  /// Throws std::invalid_argument on a missing grid or nonpositive final time.
  void validate() const;
};

/// C0 under which the Gaussian is an eigenfunction of the linear harmonic
/// problem: +1 for Schrodinger, -1 for parabolic.
double matched_prefactor(Equation e);

/// Potential and its analytic derivatives at the nodes.
struct PotentialData {
  RealField value;
  std::vector<RealField> gradient;
  RealField laplacian;
  /// (grad V)^T (grad V), used by every commutator formula.
  RealField gradient_norm_squared;
};

PotentialData evaluate_potential(const PotentialSpec& spec, const GridPtr& grid);

/// exp(-|x|^2 / 2) at the nodes.
ComplexField gaussian_initial_state(const GridPtr& grid);

/// Exact solution of the linear harmonic case, exp(-i d t) u0 (Schrodinger,
/// C0 = 1) or exp(-d t) u0 (parabolic, C0 = -1).
/// Throws std::invalid_argument unless theta = 0, q = 2 and C0 matches.
ComplexField exact_linear_solution(const ProblemSpec& problem, double t);

}  // namespace splitflow
