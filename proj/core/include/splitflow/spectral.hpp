#pragma once

#include <functional>
#include <vector>

#include "splitflow/grid.hpp"

namespace splitflow {

/// Fourier coefficients of a grid field.
///
/// Scaling: a pure mode exp(i pi m . (x/a + 1)) sampled on the nodes has a
/// single coefficient equal to one, i.e. coefficients are the forward DFT
/// divided by the number of nodes. With this choice the discrete L2 norm
/// satisfies ||v||^2 = (2a)^d * sum |c_m|^2.
struct Spectrum {
  GridPtr grid;
  std::vector<Complex> coefficients;
};

Spectrum to_spectral(const ComplexField& field);
/// Throws std::invalid_argument if the coefficient count does not match.
ComplexField from_spectral(const Spectrum& spectrum);
ComplexField from_spectral(std::span<const Complex> coefficients, const GridPtr& grid);

/// Multiplies every coefficient by `multiplier(flat_index)` and transforms back.
ComplexField apply_spectral_multiplier(const Spectrum& spectrum,
                                       const std::function<Complex(std::size_t)>& multiplier);

/// One ComplexField per axis. Exact for resolved periodic fields; for
/// non-periodic samples (e.g. x^2 on the box) there is no accuracy guarantee.
std::vector<ComplexField> spectral_gradient(const ComplexField& field);
std::vector<ComplexField> spectral_gradient(const Spectrum& spectrum);

ComplexField spectral_laplacian(const ComplexField& field);
ComplexField spectral_laplacian(const Spectrum& spectrum);

/// Gradient and Laplacian from a single forward transform (d + 1 inverse
/// transforms).
struct StateDerivatives {
  std::vector<ComplexField> gradient;
  ComplexField laplacian;
};

StateDerivatives spectral_derivatives(const ComplexField& field);

}  // namespace splitflow
