#include "bbm/numerics/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bbm::numerics {

Grid1D::Grid1D(double lo, double hi, std::size_t n_points) : lo_(lo), hi_(hi), n_(n_points) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw std::invalid_argument("Grid1D: need finite lo < hi");
  }
  if (n_points < 2) {
    throw std::invalid_argument("Grid1D: need at least 2 points");
  }
  h_ = (hi - lo) / static_cast<double>(n_points - 1);
}

Grid1D Grid1D::symmetric(double half_width, double spacing) {
  if (!(half_width > 0.0) || !(spacing > 0.0)) {
    throw std::invalid_argument("Grid1D::symmetric: half_width and spacing must be positive");
  }
  const auto cells = static_cast<std::size_t>(std::max(1.0, std::round(2.0 * half_width / spacing)));
  return Grid1D(-half_width, half_width, cells + 1);
}

std::vector<double> Grid1D::points() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = point(i);
  return out;
}

std::size_t Grid1D::nearest(double x) const noexcept {
  const double r = std::round((x - lo_) / h_);
  if (!(r > 0.0)) return 0;
  if (r >= static_cast<double>(n_ - 1)) return n_ - 1;
  return static_cast<std::size_t>(r);
}

std::vector<double> Grid1D::trapezoid_weights() const {
  std::vector<double> w(n_, h_);
  w.front() = 0.5 * h_;
  w.back() = 0.5 * h_;
  return w;
}

TimeGrid::TimeGrid(double t_final, std::size_t n_steps) : t_final_(t_final), n_steps_(n_steps) {
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw std::invalid_argument("TimeGrid: t_final must be positive");
  }
  if (n_steps < 1) {
    throw std::invalid_argument("TimeGrid: need at least one step");
  }
}

}  // namespace bbm::numerics
