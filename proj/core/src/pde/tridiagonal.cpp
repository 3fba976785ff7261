#include "bbm/pde/tridiagonal.hpp"

#include <stdexcept>

#include "bbm/errors.hpp"

namespace bbm::pde {

std::vector<double> solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> super, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (sub.size() != n || super.size() != n || rhs.size() != n || n == 0) {
    throw ShapeError("solve_tridiagonal: size mismatch");
  }
  std::vector<double> c(n);
  std::vector<double> x(n);
  double pivot = diag[0];
  if (pivot == 0.0) throw std::domain_error("solve_tridiagonal: zero pivot");
  c[0] = super[0] / pivot;
  x[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - sub[i] * c[i - 1];
    if (pivot == 0.0) throw std::domain_error("solve_tridiagonal: zero pivot");
    c[i] = i + 1 < n ? super[i] / pivot : 0.0;
    x[i] = (rhs[i] - sub[i] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

CrankNicolson::CrankNicolson(const numerics::Grid1D& grid, double dt, double coefficient)
    : dt_(dt), mu_(coefficient * dt / (2.0 * grid.spacing() * grid.spacing())) {
  if (!(dt > 0.0)) throw std::invalid_argument("CrankNicolson: dt must be > 0");
  const std::size_t n = grid.size();
  c_prime_.resize(n);
  denom_.resize(n);
  // Implicit matrix: diag 1 + 2 mu, off-diagonals -mu, with -2 mu towards
  // the interior in the first and last rows (mirror ghost).
  auto sub = [&](std::size_t i) { return i == n - 1 ? -2.0 * mu_ : -mu_; };
  auto sup = [&](std::size_t i) { return i == 0 ? -2.0 * mu_ : -mu_; };
  denom_[0] = 1.0 + 2.0 * mu_;
  c_prime_[0] = sup(0) / denom_[0];
  for (std::size_t i = 1; i < n; ++i) {
    denom_[i] = 1.0 + 2.0 * mu_ - sub(i) * c_prime_[i - 1];
    c_prime_[i] = i + 1 < n ? sup(i) / denom_[i] : 0.0;
  }
}

void CrankNicolson::step(std::vector<double>& u) const {
  const std::size_t n = u.size();
  if (n != denom_.size()) throw ShapeError("CrankNicolson: field size mismatch");
  std::vector<double> r(n);
  r[0] = (1.0 - 2.0 * mu_) * u[0] + 2.0 * mu_ * u[1];
  for (std::size_t i = 1; i + 1 < n; ++i) r[i] = mu_ * u[i - 1] + (1.0 - 2.0 * mu_) * u[i] + mu_ * u[i + 1];
  r[n - 1] = 2.0 * mu_ * u[n - 2] + (1.0 - 2.0 * mu_) * u[n - 1];

  const double sub_last = -2.0 * mu_;
  u[0] = r[0] / denom_[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double s = i == n - 1 ? sub_last : -mu_;
    u[i] = (r[i] - s * u[i - 1]) / denom_[i];
  }
  for (std::size_t i = n - 1; i-- > 0;) u[i] -= c_prime_[i] * u[i + 1];
}

}  // namespace bbm::pde
