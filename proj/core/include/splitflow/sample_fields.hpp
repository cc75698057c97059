#pragma once

#include <cstdint>

#include "splitflow/grid.hpp"

namespace splitflow {

struct SampleFieldOptions {
  std::uint64_t seed = 42;
  /// Coefficients are drawn on |m_j| <= bandwidth_fraction * M1 per axis.
  double bandwidth_fraction = 1.0 / 8.0;
  /// Multiply by exp(-|x|^2 / 2) so the state decays before the box edge.
  bool localized = true;
  /// Real-valued field (parabolic tests).
  bool real_valued = false;
  /// Target max-norm of the result.
  double amplitude = 1.0;
};

/// Smooth random test state: normally distributed coefficients on the low
/// modes, damped like (1 + |m|)^-2, optionally under a Gaussian envelope.
/// Deterministic for a given seed on a given platform.
ComplexField random_smooth_field(const GridPtr& grid, const SampleFieldOptions& options = {});

}  // namespace splitflow
