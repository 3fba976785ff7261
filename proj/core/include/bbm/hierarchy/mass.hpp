#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bbm::hierarchy {

// m_n(t) = integral of rho_n(t, .), n = 1..N.
struct MassSequence {
  double t = 0.0;
  std::vector<double> values;  // values[n - 1] = m_n

  double operator()(std::size_t n) const { return n >= 1 && n <= values.size() ? values[n - 1] : 0.0; }
  std::size_t size() const noexcept { return values.size(); }
  double total() const;
};

// Closed form e^{-t} (1 - e^{-t})^{n-1} of the count law (n >= 1).
double geometric_mass(std::size_t n, double t);

// m_1 = e^{-t}, m_n(t) = e^{-t} int_0^t e^s sum_{k=1}^{n-1} m_k(s) m_{n-k}(s) ds,
// stepped with the trapezoid rule on time_substeps uniform steps.
// t = 0 returns the initial masses m_n = [n == 1].
MassSequence mass_recursion(std::size_t N, double t, std::size_t time_substeps);

// Same recursion on arbitrary increasing nodes 0 = s_0 < ... < s_M = t, e.g.
// the nodes used by eval_gn.
MassSequence mass_recursion(std::size_t N, std::span<const double> nodes);

}  // namespace bbm::hierarchy
