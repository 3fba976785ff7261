#include "bbm/numerics/heat_kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bbm::numerics {

double heat_kernel(double t, double dx) {
  if (!(t > 0.0)) {
    throw std::domain_error("heat_kernel: t must be positive");
  }
  return std::exp(-dx * dx / (2.0 * t)) / std::sqrt(2.0 * std::numbers::pi * t);
}

}  // namespace bbm::numerics
