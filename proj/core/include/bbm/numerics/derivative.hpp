#pragma once

#include "bbm/numerics/sampled_kernel.hpp"

namespace bbm::numerics {

// Finite-difference derivative along one axis (order 1 or 2). Second-order
// central stencils inside, second-order one-sided stencils at the ends.
// Needs at least 5 grid points; axis out of range -> std::out_of_range.
SampledKernel grid_derivative(const SampledKernel& k, int axis, int order);

// d^2 / dy_a dy_b by composing two first derivatives (a != b), or the
// direct second-derivative stencil when a == b.
SampledKernel mixed_derivative(const SampledKernel& k, int axis_a, int axis_b);

// Derivative along the all-ones direction, i.e. (d_1 + ... + d_n)^order k,
// computed by shifting every coordinate by one node at once. Kernels with a
// kink across the diagonal y_i = y_j stay smooth along this direction, so the
// stencil keeps its second-order accuracy there. Order-0 kernels map to 0.
SampledKernel diagonal_derivative(const SampledKernel& k, int order);

// Sum over all (k, l) of d^2/dy_k dy_l built from grid_derivative compositions.
SampledKernel full_cross_laplacian(const SampledKernel& k);

}  // namespace bbm::numerics
