#include "splitflow/sample_fields.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "splitflow/spectral.hpp"

namespace splitflow {

ComplexField random_smooth_field(const GridPtr& grid, const SampleFieldOptions& options) {
  if (!grid) throw std::invalid_argument("sample field requires a grid");
  if (!(options.bandwidth_fraction > 0.0) || options.bandwidth_fraction > 0.5) {
    throw std::invalid_argument("bandwidth fraction must lie in (0, 1/2]");
  }
  const int limit = static_cast<int>(options.bandwidth_fraction * grid->points_per_dim());
  const auto modes = grid->modes();

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Spectrum s{grid, std::vector<Complex>(grid->size())};
  for (std::size_t flat = 0; flat < grid->size(); ++flat) {
    const auto idx = grid->axis_indices(flat);
    double m2 = 0.0;
    bool inside = true;
    for (int axis = 0; axis < grid->dim(); ++axis) {
      const int m = modes[idx[axis]];
      inside = inside && std::abs(m) <= limit;
      m2 += static_cast<double>(m) * m;
    }
    // draw for every mode so the stream does not depend on the band limit
    const double re = normal(rng);
    const double im = normal(rng);
    if (inside) {
      const double damping = 1.0 / ((1.0 + std::sqrt(m2)) * (1.0 + std::sqrt(m2)));
      s.coefficients[flat] = Complex(re, im) * damping;
    }
  }
  ComplexField v = from_spectral(s);
  if (options.real_valued) {
    for (auto& x : v) x = x.real();
  }
  if (options.localized) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::exp(-0.5 * grid->radius_squared(i));
  }
  double peak = 0.0;
  for (const auto& x : v) peak = std::max(peak, std::abs(x));
  if (peak > 0.0) v *= options.amplitude / peak;
  return v;
}

}  // namespace splitflow
