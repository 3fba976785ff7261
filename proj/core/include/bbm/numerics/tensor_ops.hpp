#pragma once

#include <span>

#include "bbm/numerics/sampled_kernel.hpp"

namespace bbm::numerics {

// Average over all n! axis permutations.
//
// Each orbit is computed once from its sorted-index representative: the orbit
// values are sorted before summation and written back to every member, so the
// result is exactly symmetric, depends only on the multiset of orbit values,
// and an orbit whose values are already identical is left untouched.
SampledKernel symmetrize(const SampledKernel& k);

// f (x)^ g: the symmetrization of (f (x) g)(y_1..y_{j+k}) = f(y_1..y_j) g(y_{j+1}..).
// Throws CapacityError when j + k exceeds max_order, ShapeError on grid mismatch.
SampledKernel sym_tensor_product(const SampledKernel& f, const SampledKernel& g,
                                 int max_order = kDefaultMaxOrder);

// Plain (unsymmetrized) tensor product.
SampledKernel tensor_product(const SampledKernel& f, const SampledKernel& g,
                             int max_order = kDefaultMaxOrder);

// Tensor-product trapezoid quadrature over all axes; order 0 returns the scalar.
double integrate(const SampledKernel& k);

// Contracts the last axis against the given per-node weights (order n -> n-1).
SampledKernel contract_last(const SampledKernel& k, std::span<const double> weights);

// Fixes the last axis at a node (order n -> n-1).
SampledKernel slice_last(const SampledKernel& k, std::size_t node);

// Entry-wise a * x + y on kernels of equal order and grid.
SampledKernel axpy(double a, const SampledKernel& x, const SampledKernel& y);
SampledKernel scaled(double a, const SampledKernel& x);

double max_abs(const SampledKernel& k);
double max_abs_difference(const SampledKernel& a, const SampledKernel& b);

// True when every entry equals its value under every axis permutation.
bool is_exactly_symmetric(const SampledKernel& k);

}  // namespace bbm::numerics
