#include "bbm/hierarchy/mass.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bbm::hierarchy {
namespace {

// sum_{k=1}^{n-1} m_k m_{n-k}, with m indexed from 0 (m[0] = m_1).
double birth(const std::vector<double>& m, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 1; k < n; ++k) acc += m[k - 1] * m[n - k - 1];
  return acc;
}

}  // namespace

double MassSequence::total() const { return std::accumulate(values.begin(), values.end(), 0.0); }

double geometric_mass(std::size_t n, double t) {
  if (n < 1) throw std::invalid_argument("geometric_mass: n must be >= 1");
  const double q = -std::expm1(-t);
  return std::exp(-t) * std::pow(q, static_cast<double>(n - 1));
}

MassSequence mass_recursion(std::size_t N, std::span<const double> nodes) {
  if (N < 1) throw std::invalid_argument("mass_recursion: N must be >= 1");
  if (nodes.empty() || nodes.front() != 0.0) {
    throw std::invalid_argument("mass_recursion: nodes must start at 0");
  }
  std::vector<double> m(N, 0.0);
  m[0] = 1.0;
  std::vector<double> next(N);
  for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
    const double dt = nodes[j + 1] - nodes[j];
    if (!(dt > 0.0)) throw std::invalid_argument("mass_recursion: nodes must increase");
    const double decay = std::exp(-dt);
    next[0] = std::exp(-nodes[j + 1]);
    // Orders are updated upwards, so the birth term at the new node only uses
    // lower orders that are already advanced.
    for (std::size_t n = 2; n <= N; ++n) {
      next[n - 1] = decay * (m[n - 1] + 0.5 * dt * birth(m, n)) + 0.5 * dt * birth(next, n);
    }
    std::swap(m, next);
  }
  return {nodes.back(), std::move(m)};
}

MassSequence mass_recursion(std::size_t N, double t, std::size_t time_substeps) {
  if (t < 0.0) throw std::domain_error("mass_recursion: t must be >= 0");
  if (time_substeps < 1) throw std::invalid_argument("mass_recursion: need at least one substep");
  std::vector<double> nodes(time_substeps + 1);
  for (std::size_t j = 0; j <= time_substeps; ++j) {
    nodes[j] = t * static_cast<double>(j) / static_cast<double>(time_substeps);
  }
  if (t == 0.0) nodes.resize(1);
  return mass_recursion(N, nodes);
}

}  // namespace bbm::hierarchy
