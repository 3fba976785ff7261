#include "bbm/hierarchy/residuals.hpp"

#include <cmath>
#include <stdexcept>

#include "bbm/errors.hpp"
#include "bbm/numerics/convergence.hpp"
#include "bbm/numerics/derivative.hpp"
#include "bbm/numerics/tensor_ops.hpp"

namespace bbm::hierarchy {
namespace {

using numerics::Grid1D;
using numerics::SampledKernel;

// Zeroes every entry with a boundary index and records the interior maximum.
Residual restrict_to_interior(SampledKernel r) {
  const std::size_t n = r.axis_length();
  std::vector<std::size_t> idx(static_cast<std::size_t>(r.order()));
  double worst = 0.0;
  for (std::size_t flat = 0; flat < r.size(); ++flat) {
    r.unravel(flat, idx);
    bool interior = true;
    for (std::size_t i : idx) interior = interior && i > 0 && i + 1 < n;
    if (interior) {
      worst = std::max(worst, std::abs(r[flat]));
    } else {
      r[flat] = 0.0;
    }
  }
  return {std::move(r), worst};
}

void check_times(double t, double dt) {
  if (!(dt > 0.0) || !(t > dt)) throw std::invalid_argument("residual: need 0 < dt < t");
}

RefinementStudy fit(std::vector<double> h, std::vector<double> e) {
  RefinementStudy s{std::move(h), std::move(e)};
  s.slope = numerics::convergence_slope(s.spacings, s.errors);
  return s;
}

}  // namespace

Residual cdme_residual(int n, double t, const Grid1D& grid, double dt, const QuadratureConfig& q) {
  if (n != 1 && n != 2) throw CapacityError("cdme_residual: n must be 1 or 2");
  check_times(t, dt);
  const SampledKernel before = rho_kernel(n, t - dt, grid, q);
  const SampledKernel now = rho_kernel(n, t, grid, q);
  const SampledKernel after = rho_kernel(n, t + dt, grid, q);

  SampledKernel lhs = numerics::scaled(0.5 / dt, numerics::axpy(-1.0, before, after));
  SampledKernel rhs = numerics::axpy(0.5, numerics::diagonal_derivative(now, 2),
                                     numerics::scaled(-1.0, now));
  if (n == 2) {
    const SampledKernel rho1 = rho_kernel(1, t, grid, q);
    rhs = numerics::axpy(1.0, numerics::sym_tensor_product(rho1, rho1), rhs);
  }
  return restrict_to_interior(numerics::axpy(-1.0, rhs, lhs));
}

Residual system_pde_residual(double t, const Grid1D& x_grid, std::span<const double> y, double dt,
                             const QuadratureConfig& q) {
  const int n = static_cast<int>(y.size());
  if (n != 1 && n != 2) throw CapacityError("system_pde_residual: n must be 1 or 2");
  check_times(t, dt);
  auto sample = [&](double time) {
    return SampledKernel::from_function(1, x_grid, [&](std::span<const double> x) {
      return eval_gn(n, time, x[0], y, q);
    });
  };
  const SampledKernel before = sample(t - dt);
  const SampledKernel now = sample(t);
  const SampledKernel after = sample(t + dt);

  SampledKernel lhs = numerics::scaled(0.5 / dt, numerics::axpy(-1.0, before, after));
  SampledKernel rhs = numerics::axpy(0.5, numerics::grid_derivative(now, 0, 2),
                                     numerics::scaled(-1.0, now));
  if (n == 2) {
    // (g_1 (x)^ g_1)(y1, y2) at fixed y is g_1(y1) g_1(y2).
    const SampledKernel birth = SampledKernel::from_function(1, x_grid, [&](std::span<const double> x) {
      return eval_g1(t, x[0], y[0]) * eval_g1(t, x[0], y[1]);
    });
    rhs = numerics::axpy(1.0, birth, rhs);
  }
  return restrict_to_interior(numerics::axpy(-1.0, rhs, lhs));
}

RefinementStudy cdme_refinement(int n, double t, double half_width, std::span<const double> spacings,
                                double dt_per_h, const QuadratureConfig& q) {
  std::vector<double> h;
  std::vector<double> e;
  for (double sp : spacings) {
    const Grid1D grid = Grid1D::symmetric(half_width, sp);
    h.push_back(grid.spacing());
    e.push_back(cdme_residual(n, t, grid, dt_per_h * grid.spacing(), q).max_interior);
  }
  return fit(std::move(h), std::move(e));
}

RefinementStudy system_pde_refinement(double t, std::span<const double> y, double half_width,
                                      std::span<const double> spacings, double dt_per_h,
                                      const QuadratureConfig& q) {
  std::vector<double> h;
  std::vector<double> e;
  for (double sp : spacings) {
    const Grid1D grid = Grid1D::symmetric(half_width, sp);
    h.push_back(grid.spacing());
    e.push_back(system_pde_residual(t, grid, y, dt_per_h * grid.spacing(), q).max_interior);
  }
  return fit(std::move(h), std::move(e));
}

}  // namespace bbm::hierarchy
