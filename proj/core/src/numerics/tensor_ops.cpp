#include "bbm/numerics/tensor_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bbm/errors.hpp"

namespace bbm::numerics {
namespace {

void require_same_grid(const SampledKernel& a, const SampledKernel& b, const char* op) {
  if (!(a.grid() == b.grid())) {
    throw ShapeError(std::string(op) + ": kernels live on different grids");
  }
}

// Sorted-sum mean of an orbit; returns the common value when all members agree.
double orbit_mean(std::vector<double>& orbit) {
  const double first = orbit.front();
  if (std::all_of(orbit.begin(), orbit.end(), [first](double v) { return v == first; })) {
    return first;
  }
  std::sort(orbit.begin(), orbit.end());
  double sum = 0.0;
  for (double v : orbit) sum += v;
  return sum / static_cast<double>(orbit.size());
}

template <class OrbitValue>
SampledKernel build_symmetric(int order, const Grid1D& grid, OrbitValue&& value_for) {
  SampledKernel out(order, grid);
  const auto perms = all_permutations(order);
  std::vector<double> orbit(perms.size());
  std::vector<std::size_t> permuted(static_cast<std::size_t>(order));
  for_each_sorted_index(order, grid.size(), [&](std::span<const std::size_t> sorted) {
    for (std::size_t p = 0; p < perms.size(); ++p) {
      for (int a = 0; a < order; ++a) permuted[a] = sorted[perms[p][a]];
      orbit[p] = value_for(permuted);
    }
    const double v = orbit_mean(orbit);
    for (const auto& perm : perms) {
      for (int a = 0; a < order; ++a) permuted[a] = sorted[perm[a]];
      out.at(permuted) = v;
    }
  });
  return out;
}

}  // namespace

SampledKernel symmetrize(const SampledKernel& k) {
  if (k.order() <= 1) return k;
  return build_symmetric(k.order(), k.grid(),
                         [&](std::span<const std::size_t> idx) { return k.at(idx); });
}

SampledKernel sym_tensor_product(const SampledKernel& f, const SampledKernel& g, int max_order) {
  require_same_grid(f, g, "sym_tensor_product");
  const int order = f.order() + g.order();
  if (order > max_order) {
    throw CapacityError("sym_tensor_product: order " + std::to_string(order) +
                        " exceeds configured maximum " + std::to_string(max_order));
  }
  const auto j = static_cast<std::size_t>(f.order());
  return build_symmetric(order, f.grid(), [&](std::span<const std::size_t> idx) {
    return f.at(idx.first(j)) * g.at(idx.subspan(j));
  });
}

SampledKernel tensor_product(const SampledKernel& f, const SampledKernel& g, int max_order) {
  require_same_grid(f, g, "tensor_product");
  const int order = f.order() + g.order();
  if (order > max_order) {
    throw CapacityError("tensor_product: order " + std::to_string(order) +
                        " exceeds configured maximum " + std::to_string(max_order));
  }
  SampledKernel out(order, f.grid());
  const std::size_t gs = g.size();
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = 0; b < gs; ++b) out[a * gs + b] = f[a] * g[b];
  }
  return out;
}

SampledKernel contract_last(const SampledKernel& k, std::span<const double> weights) {
  if (k.order() == 0) throw ShapeError("contract_last: order-0 kernel has no axis");
  const std::size_t n = k.axis_length();
  if (weights.size() != n) throw ShapeError("contract_last: weight length mismatch");
  SampledKernel out(k.order() - 1, k.grid());
  const auto vals = k.values();
  for (std::size_t r = 0; r < out.size(); ++r) {
    double acc = 0.0;
    const double* row = vals.data() + r * n;
    for (std::size_t i = 0; i < n; ++i) acc += weights[i] * row[i];
    out[r] = acc;
  }
  return out;
}

SampledKernel slice_last(const SampledKernel& k, std::size_t node) {
  if (k.order() == 0) throw ShapeError("slice_last: order-0 kernel has no axis");
  const std::size_t n = k.axis_length();
  if (node >= n) throw std::out_of_range("slice_last: node outside grid");
  SampledKernel out(k.order() - 1, k.grid());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = k[r * n + node];
  return out;
}

double integrate(const SampledKernel& k) {
  if (k.order() == 0) return k.scalar_value();
  const auto w = k.grid().trapezoid_weights();
  SampledKernel cur = contract_last(k, w);
  while (cur.order() > 0) cur = contract_last(cur, w);
  return cur.scalar_value();
}

SampledKernel axpy(double a, const SampledKernel& x, const SampledKernel& y) {
  require_same_grid(x, y, "axpy");
  if (x.order() != y.order()) throw ShapeError("axpy: order mismatch");
  SampledKernel out = y;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * x[i];
  return out;
}

SampledKernel scaled(double a, const SampledKernel& x) {
  SampledKernel out = x;
  for (auto& v : out.values()) v *= a;
  return out;
}

double max_abs(const SampledKernel& k) {
  double m = 0.0;
  for (double v : k.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_difference(const SampledKernel& a, const SampledKernel& b) {
  require_same_grid(a, b, "max_abs_difference");
  if (a.order() != b.order()) throw ShapeError("max_abs_difference: order mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool is_exactly_symmetric(const SampledKernel& k) {
  if (k.order() <= 1) return true;
  const auto perms = all_permutations(k.order());
  std::vector<std::size_t> idx(static_cast<std::size_t>(k.order()));
  std::vector<std::size_t> permuted(idx.size());
  for (std::size_t f = 0; f < k.size(); ++f) {
    k.unravel(f, idx);
    for (const auto& perm : perms) {
      for (std::size_t a = 0; a < idx.size(); ++a) permuted[a] = idx[perm[a]];
      if (k.at(permuted) != k[f]) return false;
    }
  }
  return true;
}

}  // namespace bbm::numerics
