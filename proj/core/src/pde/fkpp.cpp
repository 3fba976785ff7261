#include "bbm/pde/fkpp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bbm/errors.hpp"
#include "bbm/pde/tridiagonal.hpp"

namespace bbm::pde {
namespace {

constexpr double kRangeSlack = 1e-12;
constexpr double kBoundaryFloor = 1e-10;

void react(std::vector<double>& u, double tau) {
  const double e = std::exp(-tau);
  for (double& v : u) v = v * e / (1.0 - v + v * e);
}

}  // namespace

double default_dt(const numerics::Grid1D& grid) {
  const double h = grid.spacing();
  return std::min({h, 1e-3, 2.0 * h * h});
}

Field1D solve_fkpp(const Field1D& f0, double t_final, double dt) {
  for (double v : f0.values) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("solve_fkpp: f0 must take values in [0, 1]");
  }
  if (!(t_final >= 0.0)) throw std::invalid_argument("solve_fkpp: t_final must be >= 0");
  if (dt <= 0.0) dt = default_dt(f0.grid);
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(t_final / dt - 1e-12)));
  dt = t_final / static_cast<double>(steps);

  std::vector<double> u = f0.values;
  if (t_final == 0.0) return Field1D(f0.grid, u, f0.time);
  const bool watch_ends = u.front() < kBoundaryFloor && u.back() < kBoundaryFloor;
  const CrankNicolson diffuse(f0.grid, dt);
  for (std::size_t s = 0; s < steps; ++s) {
    react(u, 0.5 * dt);
    diffuse.step(u);
    react(u, 0.5 * dt);
    for (double v : u) {
      if (!(v >= -kRangeSlack && v <= 1.0 + kRangeSlack)) {
        throw SchemeError("solve_fkpp: solution left [0, 1] at step " + std::to_string(s));
      }
    }
    if (watch_ends && (u.front() >= kBoundaryFloor || u.back() >= kBoundaryFloor)) {
      throw SchemeError("solve_fkpp: boundary values reached 1e-10; enlarge the domain");
    }
  }
  return Field1D(f0.grid, std::move(u), f0.time + t_final);
}

}  // namespace bbm::pde
