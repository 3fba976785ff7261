#include "bbm/numerics/field.hpp"

#include <algorithm>
#include <cmath>

#include "bbm/errors.hpp"

namespace bbm::numerics {

Field1D::Field1D(Grid1D g, std::vector<double> v, double t) : grid(g), values(std::move(v)), time(t) {
  if (values.size() != grid.size()) throw ShapeError("Field1D: value count does not match grid");
}

Field1D Field1D::from_function(Grid1D g, const std::function<double(double)>& fn, double t) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = fn(g.point(i));
  return Field1D(g, std::move(v), t);
}

double Field1D::interpolate(double x) const { return interpolate_linear(grid, values, x); }

double Field1D::integral() const {
  const auto w = grid.trapezoid_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += w[i] * values[i];
  return s;
}

bool Field1D::all_finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

double interpolate_linear(const Grid1D& grid, const std::vector<double>& values, double x) {
  if (x <= grid.lo()) return values.front();
  if (x >= grid.hi()) return values.back();
  const double r = (x - grid.lo()) / grid.spacing();
  auto i = static_cast<std::size_t>(r);
  if (i >= grid.size() - 1) i = grid.size() - 2;
  const double frac = r - static_cast<double>(i);
  return (1.0 - frac) * values[i] + frac * values[i + 1];
}

}  // namespace bbm::numerics
