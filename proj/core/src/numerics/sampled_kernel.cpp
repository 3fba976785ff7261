#include "bbm/numerics/sampled_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bbm/errors.hpp"

namespace bbm::numerics {
namespace {

std::size_t checked_size(int order, std::size_t n) {
  if (order < 0) throw std::invalid_argument("SampledKernel: negative order");
  std::size_t total = 1;
  for (int a = 0; a < order; ++a) {
    if (n != 0 && total > (std::size_t{1} << 33) / n) {
      throw CapacityError("SampledKernel: tensor too large");
    }
    total *= n;
  }
  return total;
}

}  // namespace

SampledKernel::SampledKernel(int order, Grid1D grid)
    : order_(order), grid_(grid), values_(checked_size(order, grid.size()), 0.0) {}

SampledKernel::SampledKernel(int order, Grid1D grid, std::vector<double> values)
    : order_(order), grid_(grid), values_(std::move(values)) {
  if (values_.size() != checked_size(order, grid.size())) {
    throw ShapeError("SampledKernel: value count " + std::to_string(values_.size()) +
                     " does not match order " + std::to_string(order) + " on " +
                     std::to_string(grid.size()) + " points");
  }
}

SampledKernel SampledKernel::scalar(double value, Grid1D grid) {
  return SampledKernel(0, grid, std::vector<double>{value});
}

SampledKernel SampledKernel::from_function(int order, Grid1D grid,
                                           const std::function<double(std::span<const double>)>& fn) {
  SampledKernel k(order, grid);
  std::vector<std::size_t> idx(static_cast<std::size_t>(order));
  std::vector<double> coords(static_cast<std::size_t>(order));
  for (std::size_t f = 0; f < k.size(); ++f) {
    k.unravel(f, idx);
    for (int a = 0; a < order; ++a) coords[a] = grid.point(idx[a]);
    k.values_[f] = fn(coords);
  }
  return k;
}

SampledKernel SampledKernel::from_symmetric_function(
    int order, Grid1D grid, const std::function<double(std::span<const std::size_t>)>& fn) {
  SampledKernel k(order, grid);
  std::vector<std::size_t> perm(static_cast<std::size_t>(order));
  for_each_sorted_index(order, grid.size(), [&](std::span<const std::size_t> sorted) {
    const double v = fn(sorted);
    std::copy(sorted.begin(), sorted.end(), perm.begin());
    do {
      k.values_[k.flat_index(perm)] = v;
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  return k;
}

double SampledKernel::scalar_value() const {
  if (order_ != 0) throw ShapeError("SampledKernel::scalar_value on order " + std::to_string(order_));
  return values_.front();
}

std::size_t SampledKernel::flat_index(std::span<const std::size_t> index) const {
  std::size_t flat = 0;
  const std::size_t n = grid_.size();
  for (std::size_t a = 0; a < index.size(); ++a) flat = flat * n + index[a];
  return flat;
}

void SampledKernel::unravel(std::size_t flat, std::span<std::size_t> index) const noexcept {
  const std::size_t n = grid_.size();
  for (std::size_t a = index.size(); a-- > 0;) {
    index[a] = flat % n;
    flat /= n;
  }
}

std::size_t SampledKernel::stride(int axis) const noexcept {
  std::size_t s = 1;
  for (int a = order_ - 1; a > axis; --a) s *= grid_.size();
  return s;
}

bool SampledKernel::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void for_each_sorted_index(int order, std::size_t axis_length,
                           const std::function<void(std::span<const std::size_t>)>& fn) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(order), 0);
  if (order == 0) {
    fn(idx);
    return;
  }
  while (true) {
    fn(idx);
    // odometer over non-decreasing tuples
    int a = order - 1;
    while (a >= 0 && idx[a] == axis_length - 1) --a;
    if (a < 0) return;
    ++idx[a];
    for (int b = a + 1; b < order; ++b) idx[b] = idx[a];
  }
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace bbm::numerics
