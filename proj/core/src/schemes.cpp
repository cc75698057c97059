#include "splitflow/schemes.hpp"

#include <cmath>
#include <stdexcept>

namespace splitflow {

namespace {

// a_1 = 0, a_2 = a_4 = 1 - 2 b_2, a_3 = 4 b_2 - 1, b_1 = b_4 = 1/2 - b_2, b_3 = b_2,
// applied as A(a1) B(b1) A(a2) B(b2) A(a3) B(b3) A(a4) B(b4).
std::vector<Stage> triple_jump(Complex b2) {
  const Complex a1 = 0.0;
  const Complex a2 = 1.0 - 2.0 * b2;
  const Complex a3 = 4.0 * b2 - 1.0;
  const Complex b1 = 0.5 - b2;
  return {
      {StageKind::linear, a1},    {StageKind::nonlinear, b1}, {StageKind::linear, a2},
      {StageKind::nonlinear, b2}, {StageKind::linear, a3},    {StageKind::nonlinear, b2},
      {StageKind::linear, a2},    {StageKind::nonlinear, b1},
  };
}

Complex coefficient_sum(const std::vector<Stage>& stages, bool linear) {
  Complex s = 0.0;
  for (const auto& st : stages) {
    if ((st.kind == StageKind::linear) == linear) s += st.coefficient;
  }
  return s;
}

}  // namespace

double yoshida_b2() { return (1.0 - std::cbrt(2.0) - 0.5 * std::cbrt(4.0)) / 6.0; }

Complex yoshida_complex_b2() {
  const double re = (1.0 + 0.5 * std::cbrt(2.0) + 0.25 * std::cbrt(4.0)) / 6.0;
  const double im = std::sqrt(3.0) / 12.0 * (0.5 * std::cbrt(4.0) - std::cbrt(2.0));
  return {re, im};
}

bool SplittingScheme::has_complex_coefficients() const {
  for (const auto& st : stages) {
    if (st.coefficient.imag() != 0.0) return true;
  }
  return false;
}

bool SplittingScheme::is_palindromic() const {
  // skip the zero leading linear stage, which has no mirror partner
  std::vector<Stage> active;
  for (const auto& st : stages) {
    if (st.coefficient != Complex(0.0)) active.push_back(st);
  }
  for (std::size_t i = 0, j = active.size(); i < j--; ++i) {
    if (active[i].kind != active[j].kind ||
        std::abs(active[i].coefficient - active[j].coefficient) > 1e-15 ||
        active[i].commutator_weight != active[j].commutator_weight) {
      return false;
    }
  }
  return true;
}

Complex SplittingScheme::linear_coefficient_sum() const { return coefficient_sum(stages, true); }

Complex SplittingScheme::nonlinear_coefficient_sum() const {
  return coefficient_sum(stages, false);
}

SplittingScheme make_scheme(std::string_view name) {
  if (name == "lie") {
    return {"lie", {{StageKind::linear, 1.0}, {StageKind::nonlinear, 1.0}}, 1};
  }
  if (name == "strang") {
    return {"strang",
            {{StageKind::linear, 0.0},
             {StageKind::nonlinear, 0.5},
             {StageKind::linear, 1.0},
             {StageKind::nonlinear, 0.5}},
            2};
  }
  if (name == "yoshida") return {"yoshida", triple_jump(yoshida_b2()), 4};
  if (name == "yoshida_complex") {
    return {"yoshida_complex", triple_jump(yoshida_complex_b2()), 4};
  }
  if (name == "chin_modified") {
    return {"chin_modified",
            {{StageKind::nonlinear, 1.0 / 6.0},
             {StageKind::linear, 0.5},
             {StageKind::modified, 2.0 / 3.0, -1.0 / 72.0},
             {StageKind::linear, 0.5},
             {StageKind::nonlinear, 1.0 / 6.0}},
            4};
  }
  throw std::invalid_argument("unknown splitting scheme '" + std::string(name) + "'");
}

const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names{"lie", "strang", "yoshida", "yoshida_complex",
                                              "chin_modified"};
  return names;
}

}  // namespace splitflow
