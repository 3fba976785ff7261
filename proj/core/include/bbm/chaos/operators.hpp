#pragma once

#include <cstddef>

#include "bbm/chaos/expansion.hpp"

namespace bbm::chaos {

// E(f) = sum_n I_n(f^{(x)n} / n!) up to order N.
ChaosExpansion stochastic_exponential(const TestFunction& f, int N);

// S(X)(f) = sum_n int h_n f^{(x)n}, each term contracted one axis at a time.
// The pairing against E(f) carries no n! factor.
double s_transform(const ChaosExpansion& X, const TestFunction& f);

// <<X, Y>> = sum_n n! int h_n l_n over the orders both expansions hold.
double pairing(const ChaosExpansion& X, const ChaosExpansion& Y);

struct WickResult {
  ChaosExpansion product;
  // sum over dropped orders n > N of sum_k int|h_k| int|l_{n-k}|, an upper
  // bound on the L1 mass of the discarded kernels.
  double dropped_tail_bound = 0.0;
  bool truncated = false;
};

// Order-n kernel sum_{k=0}^n h_k (x)^ l_{n-k}, kept for n <= N.
// N < 0 means max(N_X, N_Y).
WickResult wick_product(const ChaosExpansion& X, const ChaosExpansion& Y, int N = -1);

struct MalliavinResult {
  ChaosExpansion derivative;
  // True when x is not a grid node and the slice was linearly interpolated.
  bool interpolated = false;
};

// D_x X = sum_{n>=1} n I_{n-1}(h_n(., x)), orders 0..N-1. A constant input
// (N = 0) gives the zero expansion of order 0.
MalliavinResult malliavin_derivative(const ChaosExpansion& X, double x);
ChaosExpansion malliavin_derivative_at_node(const ChaosExpansion& X, std::size_t node);

// d^m/dx^m of x -> D_x X at a grid node, i.e. n * (d_last^m h_n)(., x).
ChaosExpansion malliavin_derivative_x_derivative(const ChaosExpansion& X, std::size_t node, int m);

// dGamma(d): order-n kernel (d_1 + ... + d_n) h_n, differenced along the
// all-ones direction.
ChaosExpansion second_quantization_d(const ChaosExpansion& X);

// dGamma(d)^2: order-n kernel (d_1 + ... + d_n)^2 h_n with the direct second
// difference along the all-ones direction.
ChaosExpansion second_quantization_d_squared(const ChaosExpansion& X);

ChaosExpansion add(const ChaosExpansion& a, const ChaosExpansion& b);
ChaosExpansion scale(double c, const ChaosExpansion& a);

// I_1(g) for an order-1 kernel g, padded with zeros to max_order.
ChaosExpansion first_order(const SampledKernel& g, int max_order);

}  // namespace bbm::chaos
