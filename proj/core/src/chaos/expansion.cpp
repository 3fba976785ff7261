#include "bbm/chaos/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bbm/errors.hpp"
#include "bbm/numerics/derivative.hpp"
#include "bbm/numerics/tensor_ops.hpp"

namespace bbm::chaos {
namespace {

// e^{-1/s}, 0 for s <= 0.
double bump_part(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

// Smooth step: 0 for s <= 0, 1 for s >= 1.
double smooth_step(double s) {
  const double a = bump_part(s);
  const double b = bump_part(1.0 - s);
  return a / (a + b);
}

}  // namespace

ChaosExpansion::ChaosExpansion(std::vector<SampledKernel> kernels) : kernels_(std::move(kernels)) {
  if (kernels_.empty()) throw ShapeError("ChaosExpansion: need at least the order-0 kernel");
  for (std::size_t n = 0; n < kernels_.size(); ++n) {
    if (kernels_[n].order() != static_cast<int>(n)) throw ShapeError("ChaosExpansion: kernel order mismatch");
    if (!(kernels_[n].grid() == kernels_.front().grid())) throw ShapeError("ChaosExpansion: grid mismatch");
  }
}

ChaosExpansion ChaosExpansion::zero(int max_order, const Grid1D& grid) {
  std::vector<SampledKernel> k;
  for (int n = 0; n <= max_order; ++n) k.emplace_back(n, grid);
  return ChaosExpansion(std::move(k));
}

ChaosExpansion ChaosExpansion::constant(double c, int max_order, const Grid1D& grid) {
  std::vector<SampledKernel> k;
  k.push_back(SampledKernel::scalar(c, grid));
  for (int n = 1; n <= max_order; ++n) k.emplace_back(n, grid);
  return ChaosExpansion(std::move(k));
}

double max_kernel_difference(const ChaosExpansion& a, const ChaosExpansion& b) {
  if (!(a.grid() == b.grid())) throw ShapeError("max_kernel_difference: grid mismatch");
  double worst = 0.0;
  const int top = std::max(a.max_order(), b.max_order());
  for (int n = 0; n <= top; ++n) {
    if (n <= a.max_order() && n <= b.max_order()) {
      worst = std::max(worst, numerics::max_abs_difference(a.kernel(n), b.kernel(n)));
    } else {
      worst = std::max(worst, numerics::max_abs(n <= a.max_order() ? a.kernel(n) : b.kernel(n)));
    }
  }
  return worst;
}

TestFunction::TestFunction(Grid1D grid, std::vector<double> values,
                           std::optional<std::vector<double>> derivative)
    : grid_(grid), values_(std::move(values)), derivative_(std::move(derivative)) {
  if (values_.size() != grid_.size()) throw ShapeError("TestFunction: sample count != grid size");
  if (derivative_ && derivative_->size() != grid_.size()) throw ShapeError("TestFunction: derivative size");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("TestFunction: non-finite sample");
  }
  if (std::abs(values_.front()) >= 1e-12 || std::abs(values_.back()) >= 1e-12) {
    throw std::invalid_argument("TestFunction: must vanish (|f| < 1e-12) at the grid ends");
  }
}

TestFunction TestFunction::plateau(const Grid1D& grid, double core, double rolloff) {
  if (!(core >= 0.0) || !(rolloff > 0.0)) throw std::invalid_argument("plateau: bad widths");
  std::vector<double> v(grid.size());
  std::vector<double> dv(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.point(i);
    const double s = (core + rolloff - std::abs(x)) / rolloff;
    v[i] = smooth_step(s);
    // d/ds of a/(a+b) with a = e^{-1/s}, b = e^{-1/(1-s)}.
    double ds = 0.0;
    if (s > 0.0 && s < 1.0) {
      const double a = bump_part(s);
      const double b = bump_part(1.0 - s);
      const double da = a / (s * s);
      const double db = -b / ((1.0 - s) * (1.0 - s));
      ds = (da * b - a * db) / ((a + b) * (a + b));
    }
    dv[i] = ds * (x > 0.0 ? -1.0 : 1.0) / rolloff;
  }
  return TestFunction(grid, std::move(v), std::move(dv));
}

TestFunction TestFunction::gaussian_bump(const Grid1D& grid, double amplitude, double center,
                                         double width) {
  std::vector<double> v(grid.size());
  std::vector<double> dv(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double u = (grid.point(i) - center) / width;
    v[i] = amplitude * std::exp(-0.5 * u * u);
    dv[i] = -u / width * v[i];
  }
  return TestFunction(grid, std::move(v), std::move(dv));
}

std::vector<double> TestFunction::derivative() const {
  if (derivative_) return *derivative_;
  const SampledKernel d = numerics::grid_derivative(as_kernel(), 0, 1);
  return {d.values().begin(), d.values().end()};
}

SampledKernel TestFunction::as_kernel() const { return SampledKernel(1, grid_, values_); }

SampledKernel TestFunction::derivative_kernel() const { return SampledKernel(1, grid_, derivative()); }

TestFunction TestFunction::operator+(const TestFunction& other) const {
  if (!(grid_ == other.grid_)) throw ShapeError("TestFunction: grid mismatch");
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + other.values_[i];
  std::optional<std::vector<double>> d;
  if (derivative_ && other.derivative_) {
    d.emplace(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) (*d)[i] = (*derivative_)[i] + (*other.derivative_)[i];
  }
  return TestFunction(grid_, std::move(v), std::move(d));
}

}  // namespace bbm::chaos
