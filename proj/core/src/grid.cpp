#include "splitflow/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace splitflow {

namespace {

// The FFTW planner is not reentrant; execution of an existing plan on new
// arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

class FftPlans {
 public:
  FftPlans(int dim, int n) {
    std::array<int, 3> shape{n, n, n};
    std::size_t total = 1;
    for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(n);
    std::vector<Complex> scratch(total);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft(dim, shape.data(), as_fftw(scratch.data()), as_fftw(scratch.data()),
                             FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft(dim, shape.data(), as_fftw(scratch.data()), as_fftw(scratch.data()),
                              FFTW_BACKWARD, flags);
    if (forward_ == nullptr || backward_ == nullptr) {
      throw std::runtime_error("FFTW plan creation failed");
    }
  }

  ~FftPlans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }

  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  void execute(bool forward, std::span<Complex> data) const {
    fftw_execute_dft(forward ? forward_ : backward_, as_fftw(data.data()), as_fftw(data.data()));
  }

 private:
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

Grid::Grid(int dim, double half_width, int points_per_dim)
    : dim_(dim), half_width_(half_width), points_per_dim_(points_per_dim) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("grid half width must be positive");
  }
  if (points_per_dim < 8 || points_per_dim % 2 != 0) {
    throw std::invalid_argument("points per dimension must be even and at least 8");
  }

  const int n = points_per_dim;
  size_ = 1;
  for (int i = 0; i < dim; ++i) size_ *= static_cast<std::size_t>(n);
  spacing_ = 2.0 * half_width / n;
  cell_volume_ = std::pow(spacing_, dim);

  nodes_.resize(n);
  modes_.resize(n);
  derivative_factors_.resize(n);
  const double base = std::numbers::pi / half_width;
  for (int j = 0; j < n; ++j) {
    nodes_[j] = -half_width + j * spacing_;
    modes_[j] = j < n / 2 ? j : j - n;
    derivative_factors_[j] = modes_[j] == -n / 2 ? 0.0 : base * modes_[j];
  }

  laplacian_eigs_.resize(size_);
  for (std::size_t flat = 0; flat < size_; ++flat) {
    const auto idx = axis_indices(flat);
    double m2 = 0.0;
    for (int axis = 0; axis < dim; ++axis) {
      const double m = modes_[idx[axis]];
      m2 += m * m;
    }
    laplacian_eigs_[flat] = -base * base * m2;
  }

  plans_ = std::make_unique<FftPlans>(dim, n);
}

Grid::~Grid() = default;

std::array<int, 3> Grid::axis_indices(std::size_t flat) const noexcept {
  std::array<int, 3> idx{0, 0, 0};
  const auto n = static_cast<std::size_t>(points_per_dim_);
  for (int axis = dim_ - 1; axis >= 0; --axis) {
    idx[axis] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

double Grid::coordinate(std::size_t flat, int axis) const noexcept {
  return nodes_[axis_indices(flat)[axis]];
}

double Grid::radius_squared(std::size_t flat) const noexcept {
  const auto idx = axis_indices(flat);
  double r2 = 0.0;
  for (int axis = 0; axis < dim_; ++axis) r2 += nodes_[idx[axis]] * nodes_[idx[axis]];
  return r2;
}

void Grid::forward_dft(std::span<const Complex> in, std::span<Complex> out) const {
  if (in.size() != size_ || out.size() != size_) throw std::invalid_argument("DFT size mismatch");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  plans_->execute(true, out);
}

void Grid::backward_dft(std::span<const Complex> in, std::span<Complex> out) const {
  if (in.size() != size_ || out.size() != size_) throw std::invalid_argument("DFT size mismatch");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  plans_->execute(false, out);
}

GridPtr build_grid(int dim, double half_width, int points_per_dim) {
  return std::make_shared<const Grid>(dim, half_width, points_per_dim);
}

ComplexField to_complex(const RealField& f) {
  ComplexField out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
  return out;
}

double max_imag(const ComplexField& f) {
  double m = 0.0;
  for (const auto& v : f) m = std::max(m, std::abs(v.imag()));
  return m;
}

RealField real_part(const ComplexField& f) {
  RealField out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].real();
  return out;
}

bool all_finite(const ComplexField& f) {
  return std::all_of(f.begin(), f.end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

}  // namespace splitflow
