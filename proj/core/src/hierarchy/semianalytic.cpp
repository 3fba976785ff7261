#include "bbm/hierarchy/semianalytic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bbm/numerics/heat_kernel.hpp"

namespace bbm::hierarchy {

double g2_semianalytic(double t, double x, double y1, double y2) {
  if (!(t > 0.0)) throw std::domain_error("g2_semianalytic: t must be > 0");
  const double d = y1 - y2;
  const double mid = 0.5 * (y1 + y2);
  // 2u p_{2u^2}(d) = exp(-d^2 / (4u^2)) / sqrt(pi)
  auto integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double s = u * u;
    return std::exp(-d * d / (4.0 * s) - (t + s)) / std::sqrt(std::numbers::pi) *
           numerics::heat_kernel(t - 0.5 * s, x - mid);
  };
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(integrand, 0.0, std::sqrt(t), 20, 1e-14);
}

}  // namespace bbm::hierarchy
