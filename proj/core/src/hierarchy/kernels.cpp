#include "bbm/hierarchy/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "bbm/errors.hpp"
#include "bbm/numerics/heat_kernel.hpp"

namespace bbm::hierarchy {
namespace {

using numerics::Grid1D;
using numerics::heat_kernel;
using numerics::SampledKernel;

// int_0^{s_hi} e^{-(S + r)} p_{2r}(d) p_{S - r/2}(w) dr with S >= s_hi.
// This is the exact z-integral of the product of two first-order kernels
// over the initial slab; r = u^2 turns the r^{-1/2} endpoint into a smooth
// integrand.
double pair_slab(double S, double s_hi, double d, double w) {
  auto f = [&](double u) {
    const double r = u * u;
    if (r <= 0.0) return 0.0;
    const double v = S - 0.5 * r;
    return std::exp(-d * d / (4.0 * r) - (S + r) - w * w / (2.0 * v)) /
           (std::numbers::pi * std::sqrt(2.0 * v));
  };
  return boost::math::quadrature::gauss<double, 30>::integrate(f, 0.0, std::sqrt(s_hi));
}

// Discrete version of P_tau on a lattice of spacing h, as a symmetric stencil
// w[m + half], m = -half..half.
struct Stencil {
  std::vector<double> w;
  long half = 0;

  double at(long m) const { return w[static_cast<std::size_t>(m + half)]; }
};

Stencil propagator(double tau, double h, double sigmas) {
  if (tau <= 0.0) return {{1.0}, 0};
  std::vector<double> one_sided;
  if (tau >= h * h) {
    // Sampled Gaussian; the trapezoid sum of a Gaussian this wide is exact
    // to far below the quadrature error.
    const long half = static_cast<long>(std::ceil(sigmas * std::sqrt(tau) / h));
    for (long m = 0; m <= half; ++m) {
      const double x = static_cast<double>(m) * h;
      one_sided.push_back(std::exp(-x * x / (2.0 * tau)));
    }
  } else {
    // Narrower than the lattice: the continuous-time random walk with the
    // same variance, e^{-a} I_m(a), a = tau / h^2.
    const double a = tau / (h * h);
    for (unsigned m = 0; m < 64; ++m) {
      const double v = std::exp(-a) * std::cyl_bessel_i(static_cast<double>(m), a);
      one_sided.push_back(v);
      if (v < 1e-18) break;
    }
  }
  Stencil s;
  s.half = static_cast<long>(one_sided.size()) - 1;
  s.w.resize(2 * one_sided.size() - 1);
  double total = 0.0;
  for (long m = -s.half; m <= s.half; ++m) {
    const double v = one_sided[static_cast<std::size_t>(std::abs(m))];
    s.w[static_cast<std::size_t>(m + s.half)] = v;
    total += v;
  }
  for (double& v : s.w) v /= total;
  return s;
}

// (P f)(z_X) with zero extension outside the table.
double apply_at(const Stencil& s, const std::vector<double>& f, long X) {
  const long n = static_cast<long>(f.size());
  double acc = 0.0;
  for (long m = -s.half; m <= s.half; ++m) {
    const long k = X - m;
    if (k >= 0 && k < n) acc += s.at(m) * f[static_cast<std::size_t>(k)];
  }
  return acc;
}

void apply(const Stencil& s, const std::vector<double>& f, std::vector<double>& out) {
  out.resize(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = apply_at(s, f, static_cast<long>(k));
}

std::vector<double> trapezoid_node_weights(const std::vector<double>& s) {
  std::vector<double> w(s.size(), 0.0);
  for (std::size_t j = 0; j + 1 < s.size(); ++j) {
    const double half = 0.5 * (s[j + 1] - s[j]);
    w[j] += half;
    w[j + 1] += half;
  }
  return w;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

void check_common(int n, double t, std::size_t arity, const QuadratureConfig& q) {
  q.validate();
  if (n < 1) throw std::invalid_argument("eval_gn: order must be >= 1");
  if (n > q.max_order) {
    throw CapacityError("eval_gn: order " + std::to_string(n) + " exceeds max_order " +
                        std::to_string(q.max_order));
  }
  if (arity != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("eval_gn: expected " + std::to_string(n) + " arguments");
  }
  if (!(t > 0.0)) throw std::domain_error("eval_gn: t must be > 0");
}

template <class Fn>
void parallel_rows(std::size_t rows, unsigned threads, Fn fn) {
  unsigned n = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  n = static_cast<unsigned>(std::min<std::size_t>(n, rows));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows; i = next++) fn(i);
  };
  if (n <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
}

SampledKernel rho2_kernel(double t, const Grid1D& grid, const QuadratureConfig& q) {
  const double hz = rho_kernel_z_spacing(grid, q);
  QuadratureConfig qz = q;
  qz.z_spacing = hz;
  const std::size_t N = grid.size();
  SampledKernel out(2, grid);

  const double offset = grid.lo() / hz;
  const bool aligned = std::abs(offset - std::round(offset)) < 1e-9 * std::max(1.0, std::abs(offset));
  if (!aligned) {
    parallel_rows(N, q.threads, [&](std::size_t i) {
      for (std::size_t l = i; l < N; ++l) {
        const double y[] = {grid.point(i), grid.point(l)};
        const double v = rho_from_g(2, t, 0.0, y, qz);
        out[i * N + l] = v;
        out[l * N + i] = v;
      }
    });
    return out;
  }

  // With x_ref = 0 the arguments -y_i of g_2 sit on the lattice k * hz.
  const long r = std::lround(grid.spacing() / hz);
  const long base = -std::lround(offset);
  auto lattice_index = [&](std::size_t i) { return base - static_cast<long>(i) * r; };

  const std::vector<double> nodes = quadrature_time_nodes(t, hz, qz);
  const std::vector<double> omega = trapezoid_node_weights(nodes);
  const double s0 = nodes.front();
  struct NodeData {
    std::vector<double> g1;  // e^{-s} p_s(m hz), m >= 0
    long half_g1;
    Stencil prop;
    double factor;
  };
  std::vector<NodeData> data;
  data.reserve(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double s = nodes[j];
    NodeData nd;
    nd.half_g1 = static_cast<long>(std::ceil(q.support_sigmas * std::sqrt(s) / hz));
    for (long m = 0; m <= nd.half_g1; ++m) {
      nd.g1.push_back(std::exp(-s) * heat_kernel(s, static_cast<double>(m) * hz));
    }
    nd.prop = propagator(t - s, hz, q.support_sigmas);
    nd.factor = omega[j] * std::exp(-(t - s));
    data.push_back(std::move(nd));
  }

  parallel_rows(N, q.threads, [&](std::size_t i) {
    const long a = lattice_index(i);
    for (std::size_t l = i; l < N; ++l) {
      const long b = lattice_index(l);
      const double d = static_cast<double>(a - b) * hz;
      const double mid = 0.5 * static_cast<double>(a + b) * hz;
      double v = pair_slab(t, s0, d, -mid);
      for (const NodeData& nd : data) {
        if (std::abs(a - b) > 2 * nd.half_g1) continue;
        const long k_lo = std::max(-nd.prop.half, std::max(a, b) - nd.half_g1);
        const long k_hi = std::min(nd.prop.half, std::min(a, b) + nd.half_g1);
        double acc = 0.0;
        for (long k = k_lo; k <= k_hi; ++k) {
          acc += nd.prop.at(-k) * nd.g1[static_cast<std::size_t>(std::abs(k - a))] *
                 nd.g1[static_cast<std::size_t>(std::abs(k - b))];
        }
        v += nd.factor * acc;
      }
      out[i * N + l] = v;
      out[l * N + i] = v;
    }
  });
  return out;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (time_substeps < 8) throw ConfigError("quadrature: time_substeps must be >= 8");
  if (!(z_spacing > 0.0) || !std::isfinite(z_spacing)) throw ConfigError("quadrature: z_spacing must be > 0");
  if (!(support_sigmas >= 4.0)) throw ConfigError("quadrature: support_sigmas must be >= 4");
  if (!(slab_factor > 0.0)) throw ConfigError("quadrature: slab_factor must be > 0");
  if (max_order < 1 || max_order > numerics::kDefaultMaxOrder) {
    throw ConfigError("quadrature: max_order must lie in [1, 4]");
  }
}

std::vector<double> quadrature_time_nodes(double t, double z_spacing, const QuadratureConfig& q) {
  if (!(t > 0.0)) throw std::domain_error("quadrature_time_nodes: t must be > 0");
  const double s0 = std::min(q.slab_factor * z_spacing * z_spacing, 0.25 * t);
  const std::size_t M = q.time_substeps;
  std::vector<double> s(M + 1);
  const double log_ratio = std::log(t / s0);
  for (std::size_t j = 0; j < M; ++j) {
    s[j] = s0 * std::exp(log_ratio * static_cast<double>(j) / static_cast<double>(M));
  }
  s[M] = t;
  return s;
}

double eval_g1(double t, double x, double y1) {
  if (!(t > 0.0)) throw std::domain_error("eval_g1: t must be > 0");
  return std::exp(-t) * heat_kernel(t, x - y1);
}

double eval_gn(int n, double t, double x, std::span<const double> y_in, const QuadratureConfig& q) {
  check_common(n, t, y_in.size(), q);
  if (n == 1) return eval_g1(t, x, y_in[0]);

  std::vector<double> y(y_in.begin(), y_in.end());
  std::sort(y.begin(), y.end());

  // z lattice through x.
  const double h = q.z_spacing;
  const double reach = q.support_sigmas * std::sqrt(t) + h;
  const long k_min = static_cast<long>(std::floor((std::min(x, y.front()) - reach - x) / h));
  const long k_max = static_cast<long>(std::ceil((std::max(x, y.back()) + reach - x) / h));
  const std::size_t nz = static_cast<std::size_t>(k_max - k_min + 1);
  const long X = -k_min;
  std::vector<double> z(nz);
  for (std::size_t k = 0; k < nz; ++k) z[k] = x + static_cast<double>(k_min + static_cast<long>(k)) * h;

  const std::vector<double> s = quadrature_time_nodes(t, h, q);
  const double s0 = s.front();
  std::vector<double> omega = trapezoid_node_weights(s);
  if (n >= 3) omega[0] += 0.5 * s0;  // trapezoid on [0, s0]; F vanishes at s = 0

  const unsigned full = (1u << n) - 1u;
  std::vector<unsigned> inner;
  for (unsigned m = 1; m < full; ++m) {
    if (std::popcount(m) >= 2) inner.push_back(m);
  }
  std::stable_sort(inner.begin(), inner.end(),
                   [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });

  std::vector<std::vector<double>> G(full + 1, std::vector<double>(nz, 0.0));
  std::vector<std::vector<double>> F(full + 1);

  auto set_singles = [&](double si) {
    for (int i = 0; i < n; ++i) {
      auto& g = G[1u << i];
      for (std::size_t k = 0; k < nz; ++k) g[k] = std::exp(-si) * heat_kernel(si, z[k] - y[i]);
    }
  };
  // F_A = sum over nonempty proper B of g_B g_{A \ B} / C(|A|, |B|).
  auto birth = [&](unsigned mask, std::vector<double>& out) {
    const int a = std::popcount(mask);
    out.assign(nz, 0.0);
    for (unsigned sub = (mask - 1) & mask; sub != 0; sub = (sub - 1) & mask) {
      const double c = 1.0 / binomial(a, std::popcount(sub));
      const auto& gb = G[sub];
      const auto& gc = G[mask ^ sub];
      for (std::size_t k = 0; k < nz; ++k) out[k] += c * gb[k] * gc[k];
    }
  };

  set_singles(s0);
  for (unsigned mask : inner) {
    if (std::popcount(mask) == 2) {
      const int i = std::countr_zero(mask);
      const int l = 31 - std::countl_zero(mask);
      const double d = y[i] - y[l];
      const double mid = 0.5 * (y[i] + y[l]);
      for (std::size_t k = 0; k < nz; ++k) G[mask][k] = pair_slab(s0, s0, d, z[k] - mid);
    } else {
      birth(mask, F[mask]);
      for (std::size_t k = 0; k < nz; ++k) G[mask][k] = 0.5 * s0 * F[mask][k];
    }
  }
  for (unsigned mask : inner) birth(mask, F[mask]);

  double value = 0.0;
  if (n == 2) value += pair_slab(t, s0, y[0] - y[1], x - 0.5 * (y[0] + y[1]));

  std::vector<double> f_full;
  std::vector<double> tmp;
  std::vector<double> smoothed;
  for (std::size_t j = 0; j < s.size(); ++j) {
    birth(full, f_full);
    const Stencil to_t = propagator(t - s[j], h, q.support_sigmas);
    value += omega[j] * std::exp(-(t - s[j])) * apply_at(to_t, f_full, X);
    if (j + 1 == s.size()) break;

    // g_A(s + D) = e^{-D} P_D [g_A(s) + D/2 F_A(s)] + D/2 F_A(s + D)
    const double D = s[j + 1] - s[j];
    const Stencil step = propagator(D, h, q.support_sigmas);
    set_singles(s[j + 1]);
    for (unsigned mask : inner) {
      tmp.resize(nz);
      for (std::size_t k = 0; k < nz; ++k) tmp[k] = G[mask][k] + 0.5 * D * F[mask][k];
      apply(step, tmp, smoothed);
      birth(mask, F[mask]);
      for (std::size_t k = 0; k < nz; ++k) G[mask][k] = std::exp(-D) * smoothed[k] + 0.5 * D * F[mask][k];
    }
  }
  return value;
}

double rho_from_g(int n, double t, double x_ref, std::span<const double> y, const QuadratureConfig& q) {
  std::vector<double> shifted(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) shifted[i] = x_ref - y[i];
  return eval_gn(n, t, x_ref, shifted, q);
}

double rho_kernel_z_spacing(const Grid1D& grid, const QuadratureConfig& q) {
  const double r = std::max(1.0, std::ceil(grid.spacing() / q.z_spacing - 1e-6));
  return grid.spacing() / r;
}

SampledKernel rho_kernel(int n, double t, const Grid1D& grid, const QuadratureConfig& q) {
  q.validate();
  if (!(t > 0.0)) throw std::domain_error("rho_kernel: t must be > 0");
  if (n == 1) {
    return SampledKernel::from_function(1, grid, [t](std::span<const double> y) {
      return eval_g1(t, 0.0, -y[0]);
    });
  }
  if (n == 2) return rho2_kernel(t, grid, q);
  throw CapacityError("rho_kernel: full-grid storage is limited to n <= 2");
}

HierarchyKernel::HierarchyKernel(int order, double t, QuadratureConfig q)
    : order_(order), t_(t), q_(q) {
  q_.validate();
  if (order < 1) throw std::invalid_argument("HierarchyKernel: order must be >= 1");
  if (order > q_.max_order) throw CapacityError("HierarchyKernel: order exceeds max_order");
  if (!(t > 0.0)) throw std::domain_error("HierarchyKernel: t must be > 0");
}

}  // namespace bbm::hierarchy
