#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "splitflow/grid.hpp"

namespace splitflow {

enum class StageKind {
  linear,     ///< A: flow of alpha F1
  nonlinear,  ///< B: flow of beta F2
  modified,   ///< modified B: flow of beta F2 + w tau^2 G2
};

struct Stage {
  StageKind kind;
  Complex coefficient;
  /// w in the modified stage; zero otherwise.
  double commutator_weight = 0.0;
};

/// Stages are listed in application order, i.e. the rightmost factor of the
/// written composition comes first. Zero-coefficient stages are kept so the
/// catalogue mirrors the published coefficient tables; the stepper skips them.
struct SplittingScheme {
  std::string name;
  std::vector<Stage> stages;
  int declared_order = 0;

  bool has_complex_coefficients() const;
  bool is_palindromic() const;
  Complex linear_coefficient_sum() const;
  Complex nonlinear_coefficient_sum() const;
};

/// One of lie, strang, yoshida, yoshida_complex, chin_modified.
/// Throws std::invalid_argument for any other name.
SplittingScheme make_scheme(std::string_view name);

/// Catalogue order: lie, strang, yoshida, yoshida_complex, chin_modified.
const std::vector<std::string>& scheme_names();

/// b2 of the real fourth-order triple jump: (1 - 2^{1/3} - 4^{1/3}/2) / 6.
double yoshida_b2();
/// b2 of the complex fourth-order triple jump.
Complex yoshida_complex_b2();

}  // namespace splitflow
