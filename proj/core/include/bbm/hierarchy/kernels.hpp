#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bbm/numerics/grid.hpp"
#include "bbm/numerics/sampled_kernel.hpp"

namespace bbm::hierarchy {

// Resolution of the (s, z) quadrature behind eval_gn.
//
// The z-integral runs over a lattice of spacing z_spacing through the
// evaluation point x, wide enough to hold support_sigmas standard deviations
// of every Gaussian involved. The s-integral is split at
// s0 = min(slab_factor * z_spacing^2, t / 4): on [0, s0] pair terms are
// integrated in closed form over z and by Gauss-Legendre in sqrt(s), and the
// remaining [s0, t] uses time_substeps log-spaced trapezoid steps.
struct QuadratureConfig {
  std::size_t time_substeps = 256;
  double z_spacing = 0.02;
  double support_sigmas = 8.0;
  double slab_factor = 4.0;
  int max_order = 4;
  // Workers for full-grid kernels (0 = hardware concurrency).
  unsigned threads = 0;

  // ConfigError when time_substeps < 8, z_spacing <= 0, support_sigmas < 4,
  // slab_factor <= 0 or max_order outside [1, 4].
  void validate() const;
};

// Time nodes s0 < s1 < ... < sM = t of the quadrature above (without 0).
std::vector<double> quadrature_time_nodes(double t, double z_spacing, const QuadratureConfig& q);

// e^{-t} p_t(x - y1). domain_error for t <= 0.
double eval_g1(double t, double x, double y1);

// g_n(t, x; y_1..y_n) from the recursion
//   g_n = int_0^t e^{-(t-s)} [P_{t-s} F_n(s)](x) ds,  F_n = sum_k g_k (x)^ g_{n-k}.
// Intermediate kernels g_A(s, .) for every proper subset A of the arguments
// are tabulated on the z lattice once and stepped forward in s, so each
// sub-evaluation is shared within a call. The s = t end uses the delta
// limit of P_0 (value at z = x). The arguments are sorted first, which makes
// the result exactly permutation invariant.
// CapacityError when n > q.max_order; ConfigError for a bad q.
double eval_gn(int n, double t, double x, std::span<const double> y,
               const QuadratureConfig& q = {});

// rho_n(t, y) = g_n(t, x_ref; x_ref - y_1, ..., x_ref - y_n).
double rho_from_g(int n, double t, double x_ref, std::span<const double> y,
                  const QuadratureConfig& q = {});

// rho_n(t, .) sampled on grid^n, n in {1, 2} (CapacityError otherwise).
// For n = 2 the z lattice is the grid refined to a spacing <= q.z_spacing,
// and entries are computed for i <= j only and mirrored.
numerics::SampledKernel rho_kernel(int n, double t, const numerics::Grid1D& grid,
                                   const QuadratureConfig& q = {});

// The z-lattice spacing rho_kernel uses for a grid.
double rho_kernel_z_spacing(const numerics::Grid1D& grid, const QuadratureConfig& q);

// g_n at a fixed time: full-grid samples of rho_n for n <= 2, pointwise
// evaluation for higher orders.
class HierarchyKernel {
 public:
  HierarchyKernel(int order, double t, QuadratureConfig q = {});

  int order() const noexcept { return order_; }
  double time() const noexcept { return t_; }
  const QuadratureConfig& quadrature() const noexcept { return q_; }

  double g(double x, std::span<const double> y) const { return eval_gn(order_, t_, x, y, q_); }
  double rho(std::span<const double> y, double x_ref = 0.0) const {
    return rho_from_g(order_, t_, x_ref, y, q_);
  }
  numerics::SampledKernel sample(const numerics::Grid1D& grid) const {
    return rho_kernel(order_, t_, grid, q_);
  }

 private:
  int order_;
  double t_;
  QuadratureConfig q_;
};

}  // namespace bbm::hierarchy
