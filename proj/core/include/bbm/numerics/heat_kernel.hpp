#pragma once

namespace bbm::numerics {

// One-dimensional heat kernel (2 pi t)^{-1/2} exp(-dx^2 / (2 t)).
// Throws std::domain_error for t <= 0; the delta limit is never evaluated.
double heat_kernel(double t, double dx);

}  // namespace bbm::numerics
