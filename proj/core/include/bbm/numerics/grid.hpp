#pragma once

#include <cstddef>
#include <vector>

namespace bbm::numerics {

// Uniform grid lo = x_0 < x_1 < ... < x_{n-1} = hi.
class Grid1D {
 public:
  Grid1D(double lo, double hi, std::size_t n_points);

  // Grid on [-half_width, half_width] with spacing as close to `spacing` as the
  // integer point count allows.
  static Grid1D symmetric(double half_width, double spacing);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return h_; }

  double point(std::size_t i) const noexcept { return lo_ + static_cast<double>(i) * h_; }
  std::vector<double> points() const;

  // Index of the node closest to x, clamped into the grid.
  std::size_t nearest(double x) const noexcept;
  bool contains(double x) const noexcept { return x >= lo_ && x <= hi_; }

  // Composite trapezoid weights (h/2 at both ends, h inside).
  std::vector<double> trapezoid_weights() const;

  bool operator==(const Grid1D&) const = default;

 private:
  double lo_;
  double hi_;
  std::size_t n_;
  double h_;
};

class TimeGrid {
 public:
  TimeGrid(double t_final, std::size_t n_steps);

  double t_final() const noexcept { return t_final_; }
  std::size_t steps() const noexcept { return n_steps_; }
  double dt() const noexcept { return t_final_ / static_cast<double>(n_steps_); }
  double node(std::size_t j) const noexcept { return static_cast<double>(j) * dt(); }

 private:
  double t_final_;
  std::size_t n_steps_;
};

}  // namespace bbm::numerics
