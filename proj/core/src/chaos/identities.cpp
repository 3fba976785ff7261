#include "bbm/chaos/identities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "bbm/chaos/operators.hpp"
#include "bbm/numerics/convergence.hpp"

namespace bbm::chaos {
namespace {

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

IdentityCheck exact_check(std::string name, double err, double tol) {
  IdentityCheck c;
  c.name = std::move(name);
  c.kind = "exact";
  c.max_error = err;
  c.tolerance = tol;
  c.pass = err <= tol;
  return c;
}

// Runs error(grid) over the refinement ladder.
IdentityCheck fd_check(std::string name, const IdentitySuiteConfig& cfg,
                       const std::function<double(const Grid1D&)>& error) {
  IdentityCheck c;
  c.name = std::move(name);
  c.kind = "fd";
  for (double h : cfg.fd_spacings) {
    const Grid1D g = Grid1D::symmetric(cfg.fd_half_width, h);
    c.spacings.push_back(g.spacing());
    c.errors.push_back(error(g));
  }
  c.max_error = c.errors.back();
  c.tolerance = cfg.fd_floor;
  const bool all_tiny = c.max_error <= cfg.fd_floor;
  if (c.errors.size() >= 2 && !all_tiny && *std::min_element(c.errors.begin(), c.errors.end()) > 0.0) {
    c.slope = numerics::convergence_slope(c.spacings, c.errors);
  }
  c.pass = all_tiny || c.slope >= cfg.min_slope;
  return c;
}

ChaosExpansion truncate(const ChaosExpansion& X, int N) {
  std::vector<SampledKernel> k(X.kernels().begin(), X.kernels().begin() + std::min(N, X.max_order()) + 1);
  return ChaosExpansion(std::move(k));
}

}  // namespace

double Bump::operator()(double x) const {
  const double u = (x - center) / width;
  return amplitude * std::exp(-0.5 * u * u);
}

SampledKernel RandomKernelSpec::sample(const Grid1D& grid) const {
  if (order == 0) {
    double v = 0.0;
    for (const Bump& b : products) v += b.amplitude;
    return SampledKernel::scalar(v + mixed_weight, grid);
  }
  return SampledKernel::from_symmetric_function(order, grid, [&](std::span<const std::size_t> idx) {
    double v = 0.0;
    for (const Bump& b : products) {
      double p = 1.0;
      for (std::size_t i : idx) p *= b(grid.point(i)) / b.amplitude;
      v += b.amplitude * p;
    }
    double sum = 0.0;
    double p = mixed_weight;
    for (std::size_t i : idx) {
      sum += grid.point(i);
      p *= beta(grid.point(i));
    }
    return v + p * psi(sum);
  });
}

ChaosExpansion RandomExpansionSpec::sample(const Grid1D& grid, int max_order) const {
  std::vector<SampledKernel> k;
  for (int n = 0; n <= max_order; ++n) {
    k.push_back(n < static_cast<int>(kernels.size()) ? kernels[n].sample(grid) : SampledKernel(n, grid));
  }
  return ChaosExpansion(std::move(k));
}

Bump random_bump(std::mt19937_64& rng) {
  return {uniform(rng, -1.0, 1.0), uniform(rng, -0.8, 0.8), uniform(rng, 0.3, 0.5)};
}

RandomExpansionSpec random_expansion_spec(std::mt19937_64& rng, int top_order) {
  RandomExpansionSpec s;
  for (int n = 0; n <= top_order; ++n) {
    RandomKernelSpec k;
    k.order = n;
    const int terms = 1 + static_cast<int>(rng() % 2);
    for (int r = 0; r < terms; ++r) k.products.push_back(random_bump(rng));
    k.mixed_weight = uniform(rng, -0.5, 0.5);
    k.psi = {1.0, uniform(rng, -0.5, 0.5), uniform(rng, 0.4, 0.8)};
    k.beta = {1.0, 0.0, uniform(rng, 0.35, 0.5)};
    s.kernels.push_back(std::move(k));
  }
  return s;
}

namespace {

TestFunction tapered(const Grid1D& grid, const Bump& b, const TestFunction& cutoff) {
  std::vector<double> v;
  for (std::size_t i = 0; i < grid.size(); ++i) v.push_back(0.5 * b(grid.point(i)) * cutoff.values()[i]);
  return TestFunction(grid, std::move(v));
}

}  // namespace

std::vector<IdentityCheck> run_identity_suite(const IdentitySuiteConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<IdentityCheck> out;

  // Exact-arithmetic identities.
  const Grid1D eg = Grid1D::symmetric(cfg.exact_half_width, cfg.exact_spacing);
  constexpr int kN = 4;
  // Bumps on the short exact grid do not decay to zero by its ends.
  const TestFunction cutoff = TestFunction::plateau(eg, cfg.exact_half_width - 1.5, 1.0);
  double mult = 0.0;
  double unit = 0.0;
  double expo = 0.0;
  double dexp = 0.0;
  double deriv = 0.0;
  for (int c = 0; c < cfg.random_cases; ++c) {
    const ChaosExpansion X = random_expansion_spec(rng, 2).sample(eg, kN);
    const ChaosExpansion Y = random_expansion_spec(rng, 2).sample(eg, kN);
    const Bump bf = random_bump(rng);
    const Bump bg = random_bump(rng);
    const TestFunction f = tapered(eg, bf, cutoff);
    const TestFunction g = tapered(eg, bg, cutoff);

    const ChaosExpansion XY = wick_product(X, Y, kN).product;
    const double sx = s_transform(X, f);
    const double sy = s_transform(Y, f);
    mult = std::max(mult, std::abs(s_transform(XY, f) - sx * sy) / std::max(1.0, std::abs(sx * sy)));

    unit = std::max(unit, max_kernel_difference(wick_product(X, ChaosExpansion::constant(1.0, kN, eg), kN).product, X));

    const ChaosExpansion Ef = stochastic_exponential(f, kN);
    const ChaosExpansion Eg = stochastic_exponential(g, kN);
    expo = std::max(expo, max_kernel_difference(wick_product(Ef, Eg, kN).product,
                                                stochastic_exponential(f + g, kN)));

    for (std::size_t node : {eg.size() / 3, eg.size() / 2, eg.size() - 3}) {
      const double fx = f.values()[node];
      dexp = std::max(dexp, max_kernel_difference(malliavin_derivative_at_node(Ef, node),
                                                  truncate(scale(fx, Ef), kN - 1)));
      const ChaosExpansion lhs = malliavin_derivative_at_node(XY, node);
      const ChaosExpansion rhs =
          add(wick_product(malliavin_derivative_at_node(X, node), Y, kN - 1).product,
              wick_product(X, malliavin_derivative_at_node(Y, node), kN - 1).product);
      deriv = std::max(deriv, max_kernel_difference(lhs, rhs));
    }
  }
  out.push_back(exact_check("s_transform_multiplicativity", mult, cfg.exact_tolerance));
  out.push_back(exact_check("wick_unit", unit, cfg.exact_tolerance));
  out.push_back(exact_check("wick_exponential", expo, cfg.exact_tolerance));
  out.push_back(exact_check("malliavin_exponential", dexp, std::min(cfg.exact_tolerance, 1e-12)));
  out.push_back(exact_check("malliavin_wick_derivation", deriv, cfg.exact_tolerance));

  // Finite-difference identities on E(h) and random expansions.
  constexpr int kFdN = 3;
  const RandomExpansionSpec xs = random_expansion_spec(rng, kFdN);
  const Bump hb{0.8, 0.3, 0.5};
  auto bump_fn = [&](const Grid1D& g) { return TestFunction::gaussian_bump(g, hb.amplitude, hb.center, hb.width); };
  auto node_x = [&](const Grid1D& g) { return g.nearest(cfg.commutation_x); };

  out.push_back(fd_check("adjoint", cfg, [&](const Grid1D& g) {
    const ChaosExpansion X = xs.sample(g, kFdN);
    const TestFunction f = bump_fn(g);
    const double lhs = s_transform(second_quantization_d(X), f);
    const double rhs = -pairing(X, second_quantization_d(stochastic_exponential(f, kFdN)));
    return std::abs(lhs - rhs);
  }));

  out.push_back(fd_check("dgamma_exponential", cfg, [&](const Grid1D& g) {
    const TestFunction h = bump_fn(g);
    const ChaosExpansion E = stochastic_exponential(h, kFdN);
    const ChaosExpansion rhs = wick_product(E, first_order(h.derivative_kernel(), kFdN), kFdN).product;
    return max_kernel_difference(second_quantization_d(E), rhs);
  }));

  out.push_back(fd_check("commutation_dgamma", cfg, [&](const Grid1D& g) {
    const ChaosExpansion E = stochastic_exponential(bump_fn(g), kFdN);
    const std::size_t x = node_x(g);
    const ChaosExpansion lhs = malliavin_derivative_at_node(second_quantization_d(E), x);
    const ChaosExpansion rhs = add(second_quantization_d(malliavin_derivative_at_node(E, x)),
                                   malliavin_derivative_x_derivative(E, x, 1));
    return max_kernel_difference(lhs, rhs);
  }));

  out.push_back(fd_check("commutation_double", cfg, [&](const Grid1D& g) {
    const ChaosExpansion E = stochastic_exponential(bump_fn(g), kFdN);
    const std::size_t x = node_x(g);
    const ChaosExpansion lhs = malliavin_derivative_at_node(second_quantization_d_squared(E), x);
    const ChaosExpansion rhs =
        add(add(second_quantization_d_squared(malliavin_derivative_at_node(E, x)),
                scale(2.0, second_quantization_d(malliavin_derivative_x_derivative(E, x, 1)))),
            malliavin_derivative_x_derivative(E, x, 2));
    return max_kernel_difference(lhs, rhs);
  }));

  {
    const Grid1D g = Grid1D::symmetric(cfg.fd_half_width, cfg.fd_spacings.back());
    const ChaosExpansion X = xs.sample(g, kFdN);
    const TestFunction one = TestFunction::plateau(g, cfg.fd_half_width - 1.0, 0.8);
    out.push_back(exact_check("vacuum", std::abs(s_transform(second_quantization_d(X), one)),
                              cfg.vacuum_tolerance));
    out.back().kind = "fd";
  }
  return out;
}

}  // namespace bbm::chaos
