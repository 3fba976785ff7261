#include "bbm/chaos/phi.hpp"

#include <cmath>
#include <stdexcept>

#include "bbm/chaos/operators.hpp"
#include "bbm/errors.hpp"
#include "bbm/hierarchy/mass.hpp"
#include "bbm/numerics/tensor_ops.hpp"

namespace bbm::chaos {
namespace {

std::size_t node_of(const Grid1D& g, double x) {
  const double pos = (x - g.lo()) / g.spacing();
  const double r = std::round(pos);
  if (std::abs(pos - r) > 1e-9 || r < 0.0 || r >= static_cast<double>(g.size())) {
    throw std::invalid_argument("concentration: x must be a grid node");
  }
  return static_cast<std::size_t>(r);
}

}  // namespace

ChaosExpansion white_noise(double x, int N, const Grid1D& grid) {
  SampledKernel hat(1, grid);
  hat[grid.nearest(x)] = 1.0 / grid.spacing();
  return first_order(hat, N);
}

ChaosExpansion phi_from_hierarchy(double t, int N, const Grid1D& grid,
                                  const hierarchy::QuadratureConfig& q) {
  if (N < 0) throw std::invalid_argument("phi_from_hierarchy: N must be >= 0");
  if (N > 2) throw CapacityError("phi_from_hierarchy: full-grid kernels are limited to N <= 2");
  if (t < 0.0) throw std::domain_error("phi_from_hierarchy: t must be >= 0");
  if (t == 0.0) return N == 0 ? ChaosExpansion::zero(0, grid) : white_noise(0.0, N, grid);
  std::vector<SampledKernel> k;
  k.push_back(SampledKernel::scalar(0.0, grid));
  for (int n = 1; n <= N; ++n) k.push_back(hierarchy::rho_kernel(n, t, grid, q));
  return ChaosExpansion(std::move(k));
}

PhiResidual phi_equation_residual(const ChaosExpansion& before, const ChaosExpansion& now,
                                  const ChaosExpansion& after, double dt) {
  const int N = now.max_order();
  const ChaosExpansion lhs = scale(0.5 / dt, add(after, scale(-1.0, before)));
  const ChaosExpansion wick = wick_product(now, now, N).product;
  const ChaosExpansion rhs =
      add(add(scale(0.5, second_quantization_d_squared(now)), wick), scale(-1.0, now));
  PhiResidual out;
  out.wick_square_top = wick.kernel(N);
  const std::size_t len = now.grid().size();
  for (int n = 0; n <= N; ++n) {
    SampledKernel r = numerics::axpy(-1.0, rhs.kernel(n), lhs.kernel(n));
    std::vector<std::size_t> idx(static_cast<std::size_t>(n));
    double worst = 0.0;
    for (std::size_t f = 0; f < r.size(); ++f) {
      r.unravel(f, idx);
      bool interior = true;
      for (std::size_t i : idx) interior = interior && i > 0 && i + 1 < len;
      if (interior) {
        worst = std::max(worst, std::abs(r[f]));
      } else {
        r[f] = 0.0;
      }
    }
    out.residual.push_back(std::move(r));
    out.max_interior.push_back(worst);
  }
  return out;
}

PhiResidual phi_equation_residual(double t, double dt, int N, const Grid1D& grid,
                                  const hierarchy::QuadratureConfig& q) {
  if (!(dt > 0.0) || !(t > dt)) throw std::invalid_argument("phi_equation_residual: need 0 < dt < t");
  return phi_equation_residual(phi_from_hierarchy(t - dt, N, grid, q), phi_from_hierarchy(t, N, grid, q),
                               phi_from_hierarchy(t + dt, N, grid, q), dt);
}

ConcentrationResult concentration_via_malliavin(const ChaosExpansion& phi, double t, double x,
                                                double plateau_margin) {
  const Grid1D& g = phi.grid();
  const double half = 0.5 * (g.hi() - g.lo());
  const double centre = 0.5 * (g.hi() + g.lo());
  if (!(plateau_margin > 2.0 * g.spacing()) || plateau_margin >= half) {
    throw std::invalid_argument("concentration_via_malliavin: bad plateau margin");
  }
  // Plateau on the grid centred at its midpoint.
  const Grid1D shifted(g.lo() - centre, g.hi() - centre, g.size());
  const TestFunction p0 = TestFunction::plateau(shifted, half - plateau_margin, 0.5 * plateau_margin);
  const TestFunction plateau(g, {p0.values().begin(), p0.values().end()});

  const MalliavinResult d = malliavin_derivative(phi, x);
  ConcentrationResult r;
  r.truncated = s_transform(d.derivative, plateau);
  double head = 0.0;
  for (int n = 1; n <= phi.max_order(); ++n) head += n * hierarchy::geometric_mass(static_cast<std::size_t>(n), t);
  if (head > 0.0) r.tail = r.truncated * (std::exp(t) - head) / head;
  r.corrected = r.truncated + r.tail;
  return r;
}

double concentration_direct(const ChaosExpansion& phi, double x) {
  const std::size_t node = node_of(phi.grid(), x);
  double c = 0.0;
  for (int n = 1; n <= phi.max_order(); ++n) {
    c += n * numerics::integrate(numerics::slice_last(phi.kernel(n), node));
  }
  return c;
}

}  // namespace bbm::chaos
