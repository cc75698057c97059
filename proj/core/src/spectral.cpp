#include "splitflow/spectral.hpp"

#include <stdexcept>

namespace splitflow {

Spectrum to_spectral(const ComplexField& field) {
  const auto& grid = field.grid();
  if (!grid) throw std::invalid_argument("field has no grid");
  Spectrum s{grid, std::vector<Complex>(grid->size())};
  grid->forward_dft(field.values(), s.coefficients);
  const double scale = 1.0 / static_cast<double>(grid->size());
  for (auto& c : s.coefficients) c *= scale;
  return s;
}

ComplexField from_spectral(std::span<const Complex> coefficients, const GridPtr& grid) {
  if (!grid) throw std::invalid_argument("spectrum has no grid");
  if (coefficients.size() != grid->size()) {
    throw std::invalid_argument("coefficient count does not match grid");
  }
  ComplexField out(grid);
  grid->backward_dft(coefficients, out.values());
  return out;
}

ComplexField from_spectral(const Spectrum& spectrum) {
  return from_spectral(spectrum.coefficients, spectrum.grid);
}

ComplexField apply_spectral_multiplier(const Spectrum& spectrum,
                                       const std::function<Complex(std::size_t)>& multiplier) {
  std::vector<Complex> scaled(spectrum.coefficients.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    scaled[i] = multiplier(i) * spectrum.coefficients[i];
  }
  return from_spectral(scaled, spectrum.grid);
}

std::vector<ComplexField> spectral_gradient(const Spectrum& spectrum) {
  const Grid& grid = *spectrum.grid;
  const auto k = grid.derivative_factors();
  std::vector<ComplexField> out;
  out.reserve(grid.dim());
  for (int axis = 0; axis < grid.dim(); ++axis) {
    out.push_back(apply_spectral_multiplier(spectrum, [&](std::size_t flat) {
      return Complex(0.0, k[grid.axis_indices(flat)[axis]]);
    }));
  }
  return out;
}

std::vector<ComplexField> spectral_gradient(const ComplexField& field) {
  return spectral_gradient(to_spectral(field));
}

ComplexField spectral_laplacian(const Spectrum& spectrum) {
  const auto lambda = spectrum.grid->laplacian_eigenvalues();
  return apply_spectral_multiplier(spectrum, [&](std::size_t flat) { return Complex(lambda[flat]); });
}

ComplexField spectral_laplacian(const ComplexField& field) {
  return spectral_laplacian(to_spectral(field));
}

StateDerivatives spectral_derivatives(const ComplexField& field) {
  const Spectrum s = to_spectral(field);
  return {spectral_gradient(s), spectral_laplacian(s)};
}

}  // namespace splitflow
