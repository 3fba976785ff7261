#include "bbm/chaos/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bbm/errors.hpp"
#include "bbm/numerics/derivative.hpp"
#include "bbm/numerics/tensor_ops.hpp"

namespace bbm::chaos {
namespace {

using numerics::axpy;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void require_grid(const ChaosExpansion& X, const Grid1D& g, const char* op) {
  if (!(X.grid() == g)) throw ShapeError(std::string(op) + ": grid mismatch");
}

double l1_norm(const SampledKernel& k) {
  SampledKernel a = k;
  for (auto& v : a.values()) v = std::abs(v);
  return numerics::integrate(a);
}

template <class Fn>
ChaosExpansion map_kernels(const ChaosExpansion& X, Fn fn) {
  std::vector<SampledKernel> out;
  for (int n = 0; n <= X.max_order(); ++n) out.push_back(fn(n, X.kernel(n)));
  return ChaosExpansion(std::move(out));
}

}  // namespace

ChaosExpansion stochastic_exponential(const TestFunction& f, int N) {
  if (N < 0) throw std::invalid_argument("stochastic_exponential: N must be >= 0");
  const auto v = f.values();
  std::vector<SampledKernel> k;
  k.push_back(SampledKernel::scalar(1.0, f.grid()));
  for (int n = 1; n <= N; ++n) {
    const double inv = 1.0 / factorial(n);
    // Products over the sorted index keep f^{(x)n} bitwise symmetric.
    k.push_back(SampledKernel::from_symmetric_function(n, f.grid(), [&](std::span<const std::size_t> idx) {
      double p = inv;
      for (std::size_t i : idx) p *= v[i];
      return p;
    }));
  }
  return ChaosExpansion(std::move(k));
}

double s_transform(const ChaosExpansion& X, const TestFunction& f) {
  require_grid(X, f.grid(), "s_transform");
  const auto w = f.grid().trapezoid_weights();
  std::vector<double> wf(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) wf[i] = w[i] * f.values()[i];
  double total = X.kernel(0).scalar_value();
  for (int n = 1; n <= X.max_order(); ++n) {
    SampledKernel cur = numerics::contract_last(X.kernel(n), wf);
    while (cur.order() > 0) cur = numerics::contract_last(cur, wf);
    total += cur.scalar_value();
  }
  return total;
}

double pairing(const ChaosExpansion& X, const ChaosExpansion& Y) {
  if (!(X.grid() == Y.grid())) throw ShapeError("pairing: grid mismatch");
  double total = 0.0;
  const int top = std::min(X.max_order(), Y.max_order());
  for (int n = 0; n <= top; ++n) {
    SampledKernel prod = X.kernel(n);
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] *= Y.kernel(n)[i];
    total += factorial(n) * numerics::integrate(prod);
  }
  return total;
}

WickResult wick_product(const ChaosExpansion& X, const ChaosExpansion& Y, int N) {
  if (!(X.grid() == Y.grid())) throw ShapeError("wick_product: grid mismatch");
  if (N < 0) N = std::max(X.max_order(), Y.max_order());
  const Grid1D& g = X.grid();
  std::vector<SampledKernel> out;
  for (int n = 0; n <= N; ++n) {
    SampledKernel acc(n, g);
    for (int k = std::max(0, n - Y.max_order()); k <= std::min(n, X.max_order()); ++k) {
      acc = axpy(1.0, numerics::sym_tensor_product(X.kernel(k), Y.kernel(n - k), N), acc);
    }
    out.push_back(std::move(acc));
  }
  WickResult r{ChaosExpansion(std::move(out))};
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& k : X.kernels()) lx.push_back(l1_norm(k));
  for (const auto& k : Y.kernels()) ly.push_back(l1_norm(k));
  for (int a = 0; a <= X.max_order(); ++a) {
    for (int b = 0; b <= Y.max_order(); ++b) {
      if (a + b > N && lx[a] * ly[b] > 0.0) {
        r.dropped_tail_bound += lx[a] * ly[b];
        r.truncated = true;
      }
    }
  }
  return r;
}

ChaosExpansion malliavin_derivative_at_node(const ChaosExpansion& X, std::size_t node) {
  if (node >= X.grid().size()) throw std::out_of_range("malliavin_derivative: node outside grid");
  if (X.max_order() == 0) return ChaosExpansion::zero(0, X.grid());
  std::vector<SampledKernel> out;
  for (int n = 1; n <= X.max_order(); ++n) {
    out.push_back(numerics::scaled(static_cast<double>(n), numerics::slice_last(X.kernel(n), node)));
  }
  return ChaosExpansion(std::move(out));
}

MalliavinResult malliavin_derivative(const ChaosExpansion& X, double x) {
  const Grid1D& g = X.grid();
  if (!std::isfinite(x)) throw std::invalid_argument("malliavin_derivative: x must be finite");
  const double pos = (x - g.lo()) / g.spacing();
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) < 1e-9 && nearest >= 0.0 && nearest < static_cast<double>(g.size())) {
    return {malliavin_derivative_at_node(X, static_cast<std::size_t>(nearest)), false};
  }
  // Linear interpolation between the neighbouring slices (constant beyond the ends).
  const double clamped = std::clamp(pos, 0.0, static_cast<double>(g.size() - 1));
  const std::size_t i0 = std::min(static_cast<std::size_t>(clamped), g.size() - 2);
  const double w = clamped - static_cast<double>(i0);
  const ChaosExpansion a = malliavin_derivative_at_node(X, i0);
  const ChaosExpansion b = malliavin_derivative_at_node(X, i0 + 1);
  return {add(scale(1.0 - w, a), scale(w, b)), true};
}

ChaosExpansion malliavin_derivative_x_derivative(const ChaosExpansion& X, std::size_t node, int m) {
  if (m == 0) return malliavin_derivative_at_node(X, node);
  if (X.max_order() == 0) return ChaosExpansion::zero(0, X.grid());
  std::vector<SampledKernel> out;
  for (int n = 1; n <= X.max_order(); ++n) {
    const SampledKernel d = numerics::grid_derivative(X.kernel(n), n - 1, m);
    out.push_back(numerics::scaled(static_cast<double>(n), numerics::slice_last(d, node)));
  }
  return ChaosExpansion(std::move(out));
}

ChaosExpansion second_quantization_d(const ChaosExpansion& X) {
  return map_kernels(X, [](int, const SampledKernel& k) { return numerics::diagonal_derivative(k, 1); });
}

ChaosExpansion second_quantization_d_squared(const ChaosExpansion& X) {
  return map_kernels(X, [](int, const SampledKernel& k) { return numerics::diagonal_derivative(k, 2); });
}

ChaosExpansion add(const ChaosExpansion& a, const ChaosExpansion& b) {
  if (!(a.grid() == b.grid())) throw ShapeError("add: grid mismatch");
  std::vector<SampledKernel> out;
  for (int n = 0; n <= std::max(a.max_order(), b.max_order()); ++n) {
    if (n > a.max_order()) {
      out.push_back(b.kernel(n));
    } else if (n > b.max_order()) {
      out.push_back(a.kernel(n));
    } else {
      out.push_back(axpy(1.0, a.kernel(n), b.kernel(n)));
    }
  }
  return ChaosExpansion(std::move(out));
}

ChaosExpansion scale(double c, const ChaosExpansion& a) {
  return map_kernels(a, [c](int, const SampledKernel& k) { return numerics::scaled(c, k); });
}

ChaosExpansion first_order(const SampledKernel& g, int max_order) {
  if (g.order() != 1) throw ShapeError("first_order: need an order-1 kernel");
  if (max_order < 1) throw std::invalid_argument("first_order: max_order must be >= 1");
  ChaosExpansion z = ChaosExpansion::zero(max_order, g.grid());
  std::vector<SampledKernel> k(z.kernels().begin(), z.kernels().end());
  k[1] = g;
  return ChaosExpansion(std::move(k));
}

}  // namespace bbm::chaos
