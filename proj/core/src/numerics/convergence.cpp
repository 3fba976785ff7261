#include "bbm/numerics/convergence.hpp"

#include <cmath>
#include <stdexcept>

namespace bbm::numerics {

double convergence_slope(std::span<const double> steps, std::span<const double> errors) {
  if (steps.size() != errors.size() || steps.size() < 2) {
    throw std::invalid_argument("convergence_slope: need >= 2 matching samples");
  }
  const double n = static_cast<double>(steps.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0.0) || !(errors[i] > 0.0)) {
      throw std::invalid_argument("convergence_slope: steps and errors must be positive");
    }
    const double x = std::log(steps[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace bbm::numerics
