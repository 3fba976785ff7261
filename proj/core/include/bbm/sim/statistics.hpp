#pragma once

#include <cstdint>
#include <span>

#include "bbm/sim/estimators.hpp"

namespace bbm::sim {

struct ChiSquareResult {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
};

// Pearson goodness of fit. observed[i] are counts, expected[i] probabilities;
// together they must cover the whole sample space. Cells with zero expected
// probability are not allowed.
ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed,
                                std::span<const double> expected);

// n(t) against the geometric law e^{-t}(1 - e^{-t})^{n-1} on the cells
// n = 1..max_n plus a pooled tail n > max_n.
ChiSquareResult geometric_count_test(const CountPmf& pmf, double t, std::size_t max_n = 10);

}  // namespace bbm::sim
