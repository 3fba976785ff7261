#pragma once

#include "bbm/numerics/field.hpp"

namespace bbm::pde {

using numerics::Field1D;

// Default time step min(h, 1e-3, 2 h^2). The last bound keeps the explicit
// half of Crank-Nicolson monotone, so u stays inside [0, 1].
double default_dt(const numerics::Grid1D& grid);

// u_t = 1/2 u_xx + u^2 - u, u(0) = f0, by Strang splitting: exact half-step
// reaction u -> u e^{-tau} / (1 - u + u e^{-tau}), a Crank-Nicolson diffusion
// step with Neumann ends, and another half-step reaction.
//
// dt <= 0 selects default_dt; the step is then shrunk so that an integer
// number of steps lands on t_final. f0 outside [0, 1] -> std::domain_error.
// SchemeError when u leaves [0, 1] by more than 1e-12, or when f0 is below
// 1e-10 at both ends but the solution is not (domain too small).
Field1D solve_fkpp(const Field1D& f0, double t_final, double dt = 0.0);

}  // namespace bbm::pde
