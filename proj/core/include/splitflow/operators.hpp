#pragma once

#include "splitflow/model.hpp"
#include "splitflow/spectral.hpp"

namespace splitflow {

/// Problem data shared by every operator and flow. Immutable after
/// construction, so one context may be read from several threads.
class OperatorContext {
 public:
  explicit OperatorContext(ProblemSpec problem);

  const ProblemSpec& problem() const noexcept { return problem_; }
  const PotentialData& potential() const noexcept { return potential_; }
  const GridPtr& grid() const noexcept { return problem_.grid; }
  const EquationKind& equation() const noexcept { return problem_.equation; }
  double theta() const noexcept { return problem_.theta; }

 private:
  ProblemSpec problem_;
  PotentialData potential_;
};

/// F1(v) = c Lap v.
ComplexField apply_F1(const ComplexField& v, const OperatorContext& ctx);
/// F2(v) = conj(c) (V + theta |v|^2) v.
ComplexField apply_F2(const ComplexField& v, const OperatorContext& ctx);

/// G1(v) = F2'(v) F1(v) - F1'(v) F2(v) in closed form:
///   -|c|^2 (Lap V v + 2 gradV.grad v) + (conj(c)^2 - |c|^2) theta Lap(conj v) v^2
///   - 2 |c|^2 theta ((grad v . grad v) conj(v) + 2 (grad v . grad conj v) v).
ComplexField apply_G1(const ComplexField& v, const OperatorContext& ctx);

/// G2(v) = F2'(v) G1(v) - G1'(v) F2(v) in closed form.
///
/// Parabolic: 2 (|gradV|^2 + theta H(v)) v with
///   H(v) = -Lap V v^2 + 6 (gradV . grad v) v + 6 (V + 2 theta v^2) (grad v . grad v).
/// Schrodinger: -2i (|gradV|^2 - 2 theta (|v|^2 Lap V + theta K(v))) v with
///   K(v) = |v|^2 (2 Re(conj v Lap v) + 3 |grad v|^2) + Re(conj(v)^2 grad v . grad v).
/// The parabolic branch needs only first derivatives of v.
ComplexField apply_G2(const ComplexField& v, const OperatorContext& ctx);

/// Real building blocks of the modified nonlinear flow (Schrodinger only).
struct PhaseTerms {
  RealField g1;  ///< |v|^2
  RealField g2;  ///< Re(conj v Lap v)
  RealField g3;  ///< grad conj v . grad v
  RealField g4;  ///< Re(conj(v)^2 grad v . grad v)
  RealField g5;  ///< theta (2 g2 + 3 g3)
  RealField g6;  ///< g1 (Lap V + g5) + theta g4
};

/// Throws std::invalid_argument for the parabolic equation.
PhaseTerms phase_terms(const ComplexField& v, const OperatorContext& ctx);

/// f(v) = beta1 (V + theta g1) + beta2 tau^2 (2 |gradV|^2 - 4 theta g6).
/// F2 = conj(c) f1 v and G2 = conj(c) f2 v, so the modified nonlinear flow is
/// a pointwise phase rotation by f. Schrodinger only.
RealField modified_phase(const ComplexField& v, const OperatorContext& ctx, double beta1,
                         double beta2, double tau);

enum class OperatorId { F1, F2, G1 };

/// Central difference (H(v + eps w) - H(v - eps w)) / (2 eps) with real eps.
/// The operators involve conjugation, so only real increments are meaningful.
ComplexField gateaux_fd(OperatorId op, const ComplexField& v, const ComplexField& w,
                        const OperatorContext& ctx, double eps = 1e-5);

struct CommutatorEstimate {
  ComplexField g1;
  ComplexField g2;
};

/// G1 and G2 assembled from finite-difference Gateaux derivatives. G2 uses the
/// closed-form G1 (and its finite-difference derivative), never apply_G2.
CommutatorEstimate commutator_oracle(const ComplexField& v, const OperatorContext& ctx,
                                     double eps = 1e-5);

}  // namespace splitflow
