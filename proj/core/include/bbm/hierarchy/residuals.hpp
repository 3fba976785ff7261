#pragma once

#include <span>
#include <vector>

#include "bbm/hierarchy/kernels.hpp"
#include "bbm/numerics/grid.hpp"
#include "bbm/numerics/sampled_kernel.hpp"

namespace bbm::hierarchy {

// LHS - RHS on the grid; entries with an index on the boundary are zero.
struct Residual {
  numerics::SampledKernel field;
  double max_interior = 0.0;
};

// d_t rho_n - [1/2 sum_{k,l} d^2 rho_n / dy_k dy_l + sum_k rho_k (x)^ rho_{n-k} - rho_n]
// for n in {1, 2}, with a central difference in t (step dt).
//
// The double sum equals (d_1 + ... + d_n)^2, which is evaluated as a second
// difference along the all-ones direction: rho_2 has a kink across y1 = y2
// that per-axis stencils would straddle.
Residual cdme_residual(int n, double t, const numerics::Grid1D& grid, double dt,
                       const QuadratureConfig& q = {});

// d_t g_n - [1/2 d_x^2 g_n + sum_k g_k (x)^ g_{n-k} - g_n] as a function of x
// on x_grid at fixed arguments y (n = y.size() in {1, 2}).
Residual system_pde_residual(double t, const numerics::Grid1D& x_grid,
                             std::span<const double> y, double dt,
                             const QuadratureConfig& q = {});

struct RefinementStudy {
  std::vector<double> spacings;
  std::vector<double> errors;
  double slope = 0.0;
};

// Max interior residual on [-half_width, half_width] for each spacing h with
// dt = dt_per_h * h, and the fitted order.
RefinementStudy cdme_refinement(int n, double t, double half_width,
                                std::span<const double> spacings, double dt_per_h,
                                const QuadratureConfig& q = {});

RefinementStudy system_pde_refinement(double t, std::span<const double> y, double half_width,
                                      std::span<const double> spacings, double dt_per_h,
                                      const QuadratureConfig& q = {});

}  // namespace bbm::hierarchy
