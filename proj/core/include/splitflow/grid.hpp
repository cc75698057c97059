#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace splitflow {

using Complex = std::complex<double>;

class FftPlans;

/// Periodic Cartesian tensor grid on [-a, a]^d with M1 points per axis.
///
/// Flat storage is row-major over the axes (axis 0 varies slowest). Spectral
/// indices follow the usual FFT ordering m = 0, ..., M1/2 - 1, -M1/2, ..., -1.
/// The first-derivative factor of the Nyquist mode is zero; the Laplacian
/// keeps the full value -pi^2 |m|^2 / a^2.
class Grid {
 public:
  Grid(int dim, double half_width, int points_per_dim);
  ~Grid();

  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int dim() const noexcept { return dim_; }
  double half_width() const noexcept { return half_width_; }
  int points_per_dim() const noexcept { return points_per_dim_; }
  std::size_t size() const noexcept { return size_; }
  double spacing() const noexcept { return spacing_; }
  /// Volume element dx^d of the trapezoidal (lattice-sum) quadrature.
  double cell_volume() const noexcept { return cell_volume_; }

  /// Per-axis node coordinates x_j = -a + j dx (identical on every axis).
  std::span<const double> nodes() const noexcept { return nodes_; }
  /// Signed integer mode number of per-axis index j.
  std::span<const int> modes() const noexcept { return modes_; }
  /// Per-axis first-derivative factors k with mu = i k; zero at Nyquist.
  std::span<const double> derivative_factors() const noexcept { return derivative_factors_; }
  /// Laplacian eigenvalues on the full tensor index set.
  std::span<const double> laplacian_eigenvalues() const noexcept { return laplacian_eigs_; }

  /// Per-axis index of a flat position.
  std::array<int, 3> axis_indices(std::size_t flat) const noexcept;
  /// Coordinate of node `flat` along `axis`.
  double coordinate(std::size_t flat, int axis) const noexcept;
  /// Squared Euclidean distance of node `flat` from the origin.
  double radius_squared(std::size_t flat) const noexcept;

  /// Unnormalised forward DFT (exponent sign -1). `in` and `out` may alias.
  void forward_dft(std::span<const Complex> in, std::span<Complex> out) const;
  /// Unnormalised backward DFT (exponent sign +1). `in` and `out` may alias.
  void backward_dft(std::span<const Complex> in, std::span<Complex> out) const;

 private:
  int dim_;
  double half_width_;
  int points_per_dim_;
  std::size_t size_;
  double spacing_;
  double cell_volume_;
  std::vector<double> nodes_;
  std::vector<int> modes_;
  std::vector<double> derivative_factors_;
  std::vector<double> laplacian_eigs_;
  std::unique_ptr<FftPlans> plans_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Same dimension, box and resolution.
inline bool same_layout(const Grid& a, const Grid& b) noexcept {
  return a.dim() == b.dim() && a.points_per_dim() == b.points_per_dim() &&
         a.half_width() == b.half_width();
}

/// Validates the arguments and builds a shared grid.
/// Throws std::invalid_argument for dim outside {1,2,3}, odd or < 8 points
/// per axis, or a nonpositive half width.
GridPtr build_grid(int dim, double half_width, int points_per_dim);

/// Values on a grid. Copies are deep; the grid itself is shared.
template <typename T>
class Field {
 public:
  using value_type = T;

  Field() = default;
  explicit Field(GridPtr grid) : grid_(std::move(grid)), values_(checked(grid_)->size()) {}
  Field(GridPtr grid, std::vector<T> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != checked(grid_)->size()) {
      throw std::invalid_argument("field size does not match grid");
    }
  }

  const GridPtr& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  T& operator[](std::size_t i) noexcept { return values_[i]; }
  const T& operator[](std::size_t i) const noexcept { return values_[i]; }

  std::span<T> values() noexcept { return values_; }
  std::span<const T> values() const noexcept { return values_; }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  Field& operator+=(const Field& other) {
    require_same_grid(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
  }
  Field& operator-=(const Field& other) {
    require_same_grid(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
  }
  template <typename S>
  Field& operator*=(S scale) {
    for (auto& v : values_) v *= scale;
    return *this;
  }

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  template <typename S>
  friend Field operator*(S scale, Field a) { return a *= scale; }

  void require_same_grid(const Field& other) const {
    if (grid_ != other.grid_ &&
        (grid_ == nullptr || other.grid_ == nullptr || !same_layout(*grid_, *other.grid_))) {
      throw std::invalid_argument("fields live on different grids");
    }
  }

 private:
  static const GridPtr& checked(const GridPtr& g) {
    if (!g) throw std::invalid_argument("field requires a grid");
    return g;
  }

  GridPtr grid_;
  std::vector<T> values_;
};

using ComplexField = Field<Complex>;
using RealField = Field<double>;

/// Promotes a real field to complex storage.
ComplexField to_complex(const RealField& f);
/// Largest |Im| over the field.
double max_imag(const ComplexField& f);
/// Real part of every entry.
RealField real_part(const ComplexField& f);
/// True if every entry is finite.
bool all_finite(const ComplexField& f);

}  // namespace splitflow
