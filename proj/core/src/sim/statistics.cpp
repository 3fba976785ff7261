#include "bbm/sim/statistics.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <stdexcept>
#include <vector>

#include "bbm/hierarchy/mass.hpp"

namespace bbm::sim {

ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed,
                                std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.size() < 2) {
    throw std::invalid_argument("chi_square_test: need matching cell lists of length >= 2");
  }
  std::uint64_t total = 0;
  for (auto o : observed) total += o;
  const double n = static_cast<double>(total);
  ChiSquareResult r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw std::invalid_argument("chi_square_test: empty expected cell");
    const double e = n * expected[i];
    const double d = static_cast<double>(observed[i]) - e;
    r.statistic += d * d / e;
  }
  r.degrees_of_freedom = static_cast<int>(observed.size()) - 1;
  const boost::math::chi_squared dist(r.degrees_of_freedom);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

ChiSquareResult geometric_count_test(const CountPmf& pmf, double t, std::size_t max_n) {
  std::vector<std::uint64_t> observed(max_n + 1, 0);
  std::vector<double> expected(max_n + 1, 0.0);
  double head = 0.0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    expected[n - 1] = hierarchy::geometric_mass(n, t);
    head += expected[n - 1];
  }
  expected[max_n] = 1.0 - head;
  for (const auto& [n, c] : pmf.counts) observed[n <= max_n ? n - 1 : max_n] += c;
  return chi_square_test(observed, expected);
}

}  // namespace bbm::sim
