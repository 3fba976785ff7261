#pragma once

#include "bbm/numerics/field.hpp"

namespace bbm::pde {

using numerics::Field1D;

// c(t, x) = e^t p_t(x), the solution of c_t = 1/2 c_xx + c with c(0) = delta_0.
// domain_error for t <= 0.
double concentration_closed_form(double t, double x);
Field1D concentration_closed_form(double t, const numerics::Grid1D& grid);

// c_t = 1/2 c_xx + c from the mollified datum p_{eps^2}, eps = mollification_width,
// by Crank-Nicolson diffusion and an exact e^{dt} reaction factor per step.
// The exact solution is e^t p_{t + eps^2}. Requires eps >= 2h
// (std::invalid_argument). dt <= 0 selects default_dt.
Field1D solve_linear_rd(const numerics::Grid1D& grid, double t_final, double dt,
                        double mollification_width);

// max over interior nodes of |d_t c - 1/2 c_xx - c| for the closed form
// sampled on the grid, with central differences of step dt in time.
double closed_form_residual(double t, const numerics::Grid1D& grid, double dt);

struct FieldComparison {
  double l1 = 0.0;
  double linf = 0.0;
  double relative_l2 = 0.0;  // ||a - b||_2 / ||b||_2 (absolute when b = 0)
};

// Trapezoid-weighted norms of a - b. ShapeError on grid mismatch.
FieldComparison compare_fields(const Field1D& a, const Field1D& b);

}  // namespace bbm::pde
