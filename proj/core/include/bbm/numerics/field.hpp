#pragma once

#include <functional>
#include <vector>

#include "bbm/numerics/grid.hpp"

namespace bbm::numerics {

// A scalar function of x on a grid at a fixed time.
struct Field1D {
  Grid1D grid;
  std::vector<double> values;
  double time = 0.0;

  Field1D(Grid1D g, std::vector<double> v, double t = 0.0);
  static Field1D from_function(Grid1D g, const std::function<double(double)>& fn, double t = 0.0);

  // Linear interpolation; constant extension beyond the end nodes.
  double interpolate(double x) const;

  double integral() const;
  bool all_finite() const;
};

// Linear interpolation of grid samples with constant extension outside.
double interpolate_linear(const Grid1D& grid, const std::vector<double>& values, double x);

}  // namespace bbm::numerics
