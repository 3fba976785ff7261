#pragma once

#include <span>
#include <vector>

#include "bbm/numerics/grid.hpp"

namespace bbm::pde {

// Thomas recurrence for a tridiagonal system; sub[0] and super[n-1] are ignored.
std::vector<double> solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> super, std::span<const double> rhs);

// One Crank-Nicolson step of u_t = coefficient * u_xx with homogeneous
// Neumann ends (mirror ghost node). The elimination factors are computed once.
// The trapezoid mass of u is conserved exactly, and for
// coefficient * dt / h^2 <= 1 the step is monotone (no new extrema).
class CrankNicolson {
 public:
  CrankNicolson(const numerics::Grid1D& grid, double dt, double coefficient = 0.5);

  void step(std::vector<double>& u) const;
  double dt() const noexcept { return dt_; }

 private:
  double dt_;
  double mu_;
  std::vector<double> c_prime_;  // modified super-diagonal
  std::vector<double> denom_;    // pivots
};

}  // namespace bbm::pde
