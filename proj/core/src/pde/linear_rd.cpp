#include "bbm/pde/linear_rd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bbm/errors.hpp"
#include "bbm/numerics/heat_kernel.hpp"
#include "bbm/pde/fkpp.hpp"
#include "bbm/pde/tridiagonal.hpp"

namespace bbm::pde {

double concentration_closed_form(double t, double x) {
  if (!(t > 0.0)) throw std::domain_error("concentration_closed_form: t must be > 0");
  return std::exp(t) * numerics::heat_kernel(t, x);
}

Field1D concentration_closed_form(double t, const numerics::Grid1D& grid) {
  return Field1D::from_function(grid, [t](double x) { return concentration_closed_form(t, x); }, t);
}

Field1D solve_linear_rd(const numerics::Grid1D& grid, double t_final, double dt,
                        double mollification_width) {
  const double eps = mollification_width;
  if (!(eps >= 2.0 * grid.spacing())) {
    throw std::invalid_argument("solve_linear_rd: mollification width must be >= 2h");
  }
  if (!(t_final > 0.0)) throw std::invalid_argument("solve_linear_rd: t_final must be > 0");
  if (dt <= 0.0) dt = default_dt(grid);
  const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-12));
  dt = t_final / static_cast<double>(steps);

  Field1D c = Field1D::from_function(grid, [eps](double x) { return numerics::heat_kernel(eps * eps, x); });
  const CrankNicolson diffuse(grid, dt);
  const double growth = std::exp(dt);
  for (std::size_t s = 0; s < steps; ++s) {
    diffuse.step(c.values);
    for (double& v : c.values) v *= growth;
  }
  c.time = t_final;
  return c;
}

double closed_form_residual(double t, const numerics::Grid1D& grid, double dt) {
  if (!(dt > 0.0) || !(t > dt)) throw std::invalid_argument("closed_form_residual: need 0 < dt < t");
  const double h = grid.spacing();
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double x = grid.point(i);
    const double dtc = (concentration_closed_form(t + dt, x) - concentration_closed_form(t - dt, x)) / (2.0 * dt);
    const double c = concentration_closed_form(t, x);
    const double cxx = (concentration_closed_form(t, x - h) - 2.0 * c + concentration_closed_form(t, x + h)) / (h * h);
    worst = std::max(worst, std::abs(dtc - 0.5 * cxx - c));
  }
  return worst;
}

FieldComparison compare_fields(const Field1D& a, const Field1D& b) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size()) {
    throw ShapeError("compare_fields: fields live on different grids");
  }
  const auto w = a.grid.trapezoid_weights();
  FieldComparison r;
  double diff2 = 0.0;
  double ref2 = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    r.l1 += w[i] * std::abs(d);
    r.linf = std::max(r.linf, std::abs(d));
    diff2 += w[i] * d * d;
    ref2 += w[i] * b.values[i] * b.values[i];
  }
  r.relative_l2 = ref2 > 0.0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2);
  return r;
}

}  // namespace bbm::pde
