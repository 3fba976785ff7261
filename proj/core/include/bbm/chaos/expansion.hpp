#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bbm/numerics/grid.hpp"
#include "bbm/numerics/sampled_kernel.hpp"

namespace bbm::chaos {

using numerics::Grid1D;
using numerics::SampledKernel;

// X = sum_{n=0}^N I_n(h_n): kernels of orders 0..N on one grid.
class ChaosExpansion {
 public:
  // kernels[n] must have order n and every kernel the same grid (ShapeError).
  explicit ChaosExpansion(std::vector<SampledKernel> kernels);

  static ChaosExpansion zero(int max_order, const Grid1D& grid);
  // c + 0 + 0 + ...
  static ChaosExpansion constant(double c, int max_order, const Grid1D& grid);

  int max_order() const noexcept { return static_cast<int>(kernels_.size()) - 1; }
  const Grid1D& grid() const noexcept { return kernels_.front().grid(); }
  const SampledKernel& kernel(int n) const { return kernels_.at(static_cast<std::size_t>(n)); }
  std::span<const SampledKernel> kernels() const noexcept { return kernels_; }

  bool operator==(const ChaosExpansion&) const = default;

 private:
  std::vector<SampledKernel> kernels_;
};

// Largest kernel-wise max |a_n - b_n| over the orders both expansions share;
// orders present in only one count against zero.
double max_kernel_difference(const ChaosExpansion& a, const ChaosExpansion& b);

// A smooth function with compact support inside the grid.
class TestFunction {
 public:
  // Values must be finite and |f| < 1e-12 at both end nodes
  // (std::invalid_argument otherwise). An exact derivative may be supplied;
  // without one derivative() falls back to finite differences.
  TestFunction(Grid1D grid, std::vector<double> values,
               std::optional<std::vector<double>> derivative = std::nullopt);

  // 1 on [-core, core], rolling off to 0 over `rolloff` with the C-infinity
  // transition psi(s) = e^{-1/s} / (e^{-1/s} + e^{-1/(1-s)}). Stands in for the
  // constant 1 in E(1) pairings.
  static TestFunction plateau(const Grid1D& grid, double core, double rolloff);

  // amplitude * exp(-(x - center)^2 / (2 width^2)).
  static TestFunction gaussian_bump(const Grid1D& grid, double amplitude, double center,
                                    double width);

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::vector<double> derivative() const;
  bool has_exact_derivative() const noexcept { return derivative_.has_value(); }

  // Order-1 kernel with the same samples.
  SampledKernel as_kernel() const;
  SampledKernel derivative_kernel() const;

  TestFunction operator+(const TestFunction& other) const;

 private:
  Grid1D grid_;
  std::vector<double> values_;
  std::optional<std::vector<double>> derivative_;
};

}  // namespace bbm::chaos
