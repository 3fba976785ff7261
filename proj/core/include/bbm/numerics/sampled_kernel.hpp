#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "bbm/numerics/grid.hpp"

namespace bbm::numerics {

inline constexpr int kDefaultMaxOrder = 4;

// An order-n function sampled on the tensor grid grid x ... x grid, stored
// row-major (last axis fastest). Order 0 holds a single scalar.
class SampledKernel {
 public:
  SampledKernel(int order, Grid1D grid);
  SampledKernel(int order, Grid1D grid, std::vector<double> values);

  static SampledKernel scalar(double value, Grid1D grid);

  // Fills every entry from fn(point coordinates).
  static SampledKernel from_function(int order, Grid1D grid,
                                     const std::function<double(std::span<const double>)>& fn);

  // fn is called once per orbit with non-decreasing grid indices and the
  // result is written to every permutation, so the kernel is exactly symmetric.
  static SampledKernel from_symmetric_function(
      int order, Grid1D grid, const std::function<double(std::span<const std::size_t>)>& fn);

  int order() const noexcept { return order_; }
  const Grid1D& grid() const noexcept { return grid_; }
  std::size_t axis_length() const noexcept { return grid_.size(); }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  double operator[](std::size_t flat) const noexcept { return values_[flat]; }
  double& operator[](std::size_t flat) noexcept { return values_[flat]; }

  double at(std::span<const std::size_t> index) const { return values_[flat_index(index)]; }
  double& at(std::span<const std::size_t> index) { return values_[flat_index(index)]; }

  // Order-0 value.
  double scalar_value() const;

  std::size_t flat_index(std::span<const std::size_t> index) const;
  void unravel(std::size_t flat, std::span<std::size_t> index) const noexcept;

  // Stride of an axis in the flat layout.
  std::size_t stride(int axis) const noexcept;

  bool all_finite() const noexcept;

  // Exact (bitwise) equality of order, grid and values.
  bool operator==(const SampledKernel&) const = default;

 private:
  int order_;
  Grid1D grid_;
  std::vector<double> values_;
};

// Calls fn(index) for every non-decreasing multi-index of the given order.
void for_each_sorted_index(int order, std::size_t axis_length,
                           const std::function<void(std::span<const std::size_t>)>& fn);

// All permutations of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<int>> all_permutations(int n);

}  // namespace bbm::numerics
