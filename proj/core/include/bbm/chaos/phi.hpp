#pragma once

#include <vector>

#include "bbm/chaos/expansion.hpp"
#include "bbm/hierarchy/kernels.hpp"

namespace bbm::chaos {

// W_x truncated at order N: the order-1 kernel is the hat function of mass 1
// at the node nearest x (value 1/h there), every other order is zero. The
// O(h) smearing of the delta is inherent to the grid.
ChaosExpansion white_noise(double x, int N, const Grid1D& grid);

// Phi(t) = sum_n I_n(rho_n(t, .)) truncated at N <= 2, with h_0 = 0.
// t = 0 gives W_0. CapacityError for N > 2.
ChaosExpansion phi_from_hierarchy(double t, int N, const Grid1D& grid,
                                  const hierarchy::QuadratureConfig& q = {});

// Per-order residuals of d_t Phi - [1/2 dGamma(d)^2 Phi + Phi^{<>2} - Phi].
struct PhiResidual {
  std::vector<SampledKernel> residual;  // orders 0..N; boundary entries zeroed
  std::vector<double> max_interior;     // per order
  // The order-N part of the Wick square, kept for comparison with the
  // hierarchy's birth term.
  SampledKernel wick_square_top{0, Grid1D(0.0, 1.0, 2)};
};

// Built from phi_from_hierarchy at t - dt, t, t + dt, so it needs t > dt.
PhiResidual phi_equation_residual(double t, double dt, int N, const Grid1D& grid,
                                  const hierarchy::QuadratureConfig& q = {});

// Same, from already computed expansions at t - dt, t and t + dt.
PhiResidual phi_equation_residual(const ChaosExpansion& before, const ChaosExpansion& now,
                                  const ChaosExpansion& after, double dt);

struct ConcentrationResult {
  double truncated = 0.0;  // <<D_x Phi_N(t), E(plateau)>>
  double tail = 0.0;       // geometric-law estimate of the orders above N
  double corrected = 0.0;  // truncated + tail
};

// c(t, x) = <<D_x Phi(t), E(1)>> with E(1) realized by a plateau that is 1 on
// the grid minus a margin of plateau_margin at each end.
//
// The tail uses that the one-point marginal of rho_n is m_n p_t: orders above
// N contribute the truncated profile rescaled by
// (e^t - sum_{n<=N} n m_n) / sum_{n<=N} n m_n, with m_n from the count law.
ConcentrationResult concentration_via_malliavin(const ChaosExpansion& phi, double t, double x,
                                                double plateau_margin = 1.0);

// sum_n n int rho_n(y_1..y_{n-1}, x) dy by plain trapezoid quadrature over
// the same kernels (x must be a grid node).
double concentration_direct(const ChaosExpansion& phi, double x);

}  // namespace bbm::chaos
