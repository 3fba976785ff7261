#pragma once

#include <span>

namespace bbm::numerics {

// Least-squares slope of log(error) against log(step).
double convergence_slope(std::span<const double> steps, std::span<const double> errors);

}  // namespace bbm::numerics
