#include "bbm/numerics/derivative.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbm/numerics/tensor_ops.hpp"

namespace bbm::numerics {
namespace {

// Derivative at position p of a line of `len` samples read through `f`.
template <class Read>
double line_stencil(const Read& f, std::size_t len, std::size_t p, double h, int order) {
  if (order == 1) {
    if (len >= 3) {
      if (p > 0 && p + 1 < len) return (f(p + 1) - f(p - 1)) / (2.0 * h);
      if (p == 0) return (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
      return (3.0 * f(p) - 4.0 * f(p - 1) + f(p - 2)) / (2.0 * h);
    }
    if (len == 2) return (f(1) - f(0)) / h;
    return 0.0;
  }
  const double h2 = h * h;
  if (p > 0 && p + 1 < len) return (f(p + 1) - 2.0 * f(p) + f(p - 1)) / h2;
  if (len >= 4) {
    if (p == 0) return (2.0 * f(0) - 5.0 * f(1) + 4.0 * f(2) - f(3)) / h2;
    return (2.0 * f(p) - 5.0 * f(p - 1) + 4.0 * f(p - 2) - f(p - 3)) / h2;
  }
  if (len == 3) return (f(0) - 2.0 * f(1) + f(2)) / h2;
  return 0.0;
}

void check_order(int order) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("derivative order must be 1 or 2");
  }
}

}  // namespace

SampledKernel grid_derivative(const SampledKernel& k, int axis, int order) {
  check_order(order);
  if (axis < 0 || axis >= k.order()) {
    throw std::out_of_range("grid_derivative: axis " + std::to_string(axis) +
                            " out of range for order " + std::to_string(k.order()));
  }
  const std::size_t n = k.axis_length();
  if (n < 5) throw std::invalid_argument("grid_derivative: grid needs at least 5 points");

  SampledKernel out(k.order(), k.grid());
  const std::size_t stride = k.stride(axis);
  const std::size_t block = stride * n;
  const double h = k.grid().spacing();
  const auto in = k.values();
  for (std::size_t outer = 0; outer < k.size(); outer += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      const std::size_t base = outer + inner;
      auto read = [&](std::size_t i) { return in[base + i * stride]; };
      for (std::size_t i = 0; i < n; ++i) {
        out[base + i * stride] = line_stencil(read, n, i, h, order);
      }
    }
  }
  return out;
}

SampledKernel mixed_derivative(const SampledKernel& k, int axis_a, int axis_b) {
  if (axis_a == axis_b) return grid_derivative(k, axis_a, 2);
  return grid_derivative(grid_derivative(k, axis_a, 1), axis_b, 1);
}

SampledKernel diagonal_derivative(const SampledKernel& k, int order) {
  check_order(order);
  SampledKernel out(k.order(), k.grid());
  if (k.order() == 0) return out;
  const std::size_t n = k.axis_length();
  if (n < 5) throw std::invalid_argument("diagonal_derivative: grid needs at least 5 points");

  // Moving one node along (1, ..., 1) changes the flat index by this amount.
  std::size_t diag_step = 0;
  for (int a = 0; a < k.order(); ++a) diag_step += k.stride(a);

  const double h = k.grid().spacing();
  const auto in = k.values();
  std::vector<std::size_t> idx(static_cast<std::size_t>(k.order()));
  for (std::size_t f = 0; f < k.size(); ++f) {
    k.unravel(f, idx);
    const auto [lo_it, hi_it] = std::minmax_element(idx.begin(), idx.end());
    const std::size_t p = *lo_it;
    const std::size_t len = n - (*hi_it - *lo_it);
    const std::size_t start = f - p * diag_step;
    auto read = [&](std::size_t i) { return in[start + i * diag_step]; };
    out[f] = line_stencil(read, len, p, h, order);
  }
  return out;
}

SampledKernel full_cross_laplacian(const SampledKernel& k) {
  SampledKernel out(k.order(), k.grid());
  for (int a = 0; a < k.order(); ++a) {
    for (int b = 0; b < k.order(); ++b) {
      out = axpy(1.0, mixed_derivative(k, a, b), out);
    }
  }
  return out;
}

}  // namespace bbm::numerics
