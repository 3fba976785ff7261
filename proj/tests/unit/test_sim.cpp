#include <doctest.h>

#include <cmath>
#include <numeric>

#include "bbm/errors.hpp"
#include "bbm/hierarchy/mass.hpp"
#include "bbm/numerics/heat_kernel.hpp"
#include "bbm/numerics/tensor_ops.hpp"
#include "bbm/sim/estimators.hpp"
#include "bbm/sim/simulate.hpp"
#include "bbm/sim/statistics.hpp"

using namespace bbm;
using numerics::Grid1D;

namespace {

sim::SimConfig config(double t, std::uint64_t trials, unsigned threads = 1) {
  sim::SimConfig c;
  c.t_final = t;
  c.trials = trials;
  c.threads = threads;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  sim::SimConfig c;
  CHECK_NOTHROW(c.validate());
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.t_final = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.max_particles = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("single trials") {
  SUBCASE("short horizon keeps one particle at the origin") {
    const auto ps = sim::simulate(config(1e-12, 10), 3);
    REQUIRE(ps.count() == 1);
    CHECK(std::abs(ps.positions[0]) < 1e-4);
  }
  SUBCASE("replay is bit-identical and independent of order") {
    const auto c = config(2.0, 100);
    const auto a = sim::simulate(c, 42);
    sim::simulate(c, 7);
    CHECK(sim::simulate(c, 42) == a);
    CHECK_FALSE(sim::simulate(c, 43) == a);
  }
  SUBCASE("trial index must be in range") {
    CHECK_THROWS_AS(sim::simulate(config(1.0, 5), 5), std::out_of_range);
  }
  SUBCASE("population cap names the trial") {
    auto c = config(6.0, 50);
    c.max_particles = 3;
    bool thrown = false;
    for (std::uint64_t i = 0; i < c.trials && !thrown; ++i) {
      try {
        sim::simulate(c, i);
      } catch (const ResourceError& e) {
        thrown = true;
        CHECK(e.trial() == i);
      }
    }
    CHECK(thrown);
  }
  SUBCASE("n(t) never decreases along a path") {
    const std::vector<double> times{0.25, 0.5, 1.0, 1.5, 2.0};
    const auto c = config(2.0, 200);
    for (std::uint64_t i = 0; i < c.trials; ++i) {
      const auto path = sim::simulate_path(c, i, times);
      REQUIRE(path.size() == times.size());
      for (std::size_t k = 0; k < path.size(); ++k) {
        CHECK(path[k].count() >= 1);
        CHECK(path[k].time == doctest::Approx(times[k]));
        if (k > 0) CHECK(path[k].count() >= path[k - 1].count());
      }
    }
  }
}

TEST_CASE("count law") {
  const auto pmf = sim::estimate_count_pmf(config(1.0, 100000));
  double total = 0.0;
  for (const auto& [n, c] : pmf.counts) total += pmf.probability(n);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(std::abs(pmf.mean() - std::exp(1.0)) <= 3.0 * pmf.mean_standard_error());
  CHECK(std::abs(pmf.probability(1) - std::exp(-1.0)) <= 3.0 * pmf.standard_error(1));

  // E n(t) from the mass recursion, an independent route to the same value.
  const auto m = hierarchy::mass_recursion(60, 1.0, 4000);
  double mean = 0.0;
  for (std::size_t n = 1; n <= m.size(); ++n) mean += static_cast<double>(n) * m(n);
  CHECK(std::abs(pmf.mean() - mean) <= 3.0 * pmf.mean_standard_error());

  CHECK(sim::geometric_count_test(pmf, 1.0).p_value > 1e-3);

  const auto early = sim::estimate_count_pmf(config(1e-12, 1000));
  CHECK(early.probability(1) == 1.0);
}

TEST_CASE("results do not depend on the thread count") {
  const Grid1D g(-4.0, 4.0, 41);
  const auto a = sim::estimate_density(2, config(1.0, 5000, 1), g);
  const auto b = sim::estimate_density(2, config(1.0, 5000, 3), g);
  CHECK(a.counts == b.counts);
  CHECK(a.sum_sq == b.sum_sq);
  const auto ca = sim::estimate_concentration(config(1.0, 5000, 1), g);
  const auto cb = sim::estimate_concentration(config(1.0, 5000, 4), g);
  CHECK(ca.field.values == cb.field.values);
  CHECK(ca.standard_error == cb.standard_error);
}

TEST_CASE("density histograms") {
  const Grid1D g(-6.0, 6.0, 121);
  const auto c = config(1.0, 100000);

  SUBCASE("n = 1 against e^{-1} p_1") {
    const auto h = sim::estimate_density(1, c, g);
    const auto d = h.density();
    double l1 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      l1 += std::abs(d[i] - std::exp(-1.0) * numerics::heat_kernel(1.0, g.point(i))) * g.spacing();
    CHECK(l1 <= 0.02);
  }
  SUBCASE("n = 2 is symmetric and carries mass m_2") {
    const auto h = sim::estimate_density(2, c, g);
    const auto d = h.density();
    CHECK(numerics::is_exactly_symmetric(d));
    // standard error of the mass: binomial in the matched-trial count
    const double p = static_cast<double>(h.matched_trials) / static_cast<double>(h.trials);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(h.trials));
    CHECK(std::abs(h.mass() - std::exp(-1.0) * (1.0 - std::exp(-1.0))) <= 3.0 * se);
    // mass equals counts / (trials * orderings * bin volume) arithmetic
    const double raw = std::accumulate(h.counts.begin(), h.counts.end(), 0.0) /
                       (static_cast<double>(h.trials) * h.orderings);
    CHECK(std::abs(h.mass() - raw) < 1e-12);
  }
  SUBCASE("capacity and empty estimates") {
    CHECK_THROWS_AS(sim::estimate_density(3, c, g), CapacityError);
    const auto h = sim::estimate_density(2, config(1e-9, 100), g);
    CHECK(h.empty());
    CHECK(h.mass() == 0.0);
  }
  SUBCASE("marginal of rho_3 has mass m_3") {
    const auto h = sim::estimate_marginal_density(3, config(1.0, 20000), g);
    const double m3 = hierarchy::geometric_mass(3, 1.0);
    const double se = std::sqrt(m3 * (1.0 - m3) / 20000.0);
    CHECK(std::abs(h.mass() - m3) <= 3.0 * se);
  }
}

TEST_CASE("mckean functional") {
  const Grid1D g(-10.0, 10.0, 201);
  const std::vector<double> xs{-1.0, 0.0, 1.0};
  const auto c = config(1.0, 2000);
  const auto ones = sim::estimate_mckean(numerics::Field1D::from_function(g, [](double) { return 1.0; }), xs, c);
  const auto zeros = sim::estimate_mckean(numerics::Field1D::from_function(g, [](double) { return 0.0; }), xs, c);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(ones[i].estimate == 1.0);
    CHECK(ones[i].standard_error == 0.0);
    CHECK(zeros[i].estimate == 0.0);
  }
  const auto bad = numerics::Field1D::from_function(g, [](double x) { return 1.5 * std::exp(-x * x); });
  CHECK_THROWS_AS(sim::estimate_mckean(bad, xs, c), std::domain_error);

  // symmetric f gives a symmetric u
  const auto ball = numerics::Field1D::from_function(g, [](double x) { return std::abs(x) < 0.5 ? 0.2 : 1.0; });
  const std::vector<double> pm{-0.8, 0.8};
  const auto u = sim::estimate_mckean(ball, pm, config(1.0, 50000));
  CHECK(std::abs(u[0].estimate - u[1].estimate) <=
        3.0 * std::hypot(u[0].standard_error, u[1].standard_error));
}

TEST_CASE("concentration field and ball occupancy") {
  const Grid1D g(-6.0, 6.0, 121);
  const auto c = config(1.0, 100000);
  const auto est = sim::estimate_concentration(c, g);
  double integral = 0.0;
  for (double v : est.field.values) integral += v * g.spacing();
  CHECK(std::abs(integral - std::exp(1.0)) <= 3.0 * est.mean_count_standard_error);

  const auto early = sim::estimate_concentration(config(1e-9, 1000), g);
  double mass = 0.0;
  for (double v : early.field.values) mass += v * g.spacing();
  CHECK(mass == doctest::Approx(1.0));
  CHECK(early.field.values[g.nearest(0.0)] == doctest::Approx(1.0 / g.spacing()));

  const auto occ = sim::estimate_ball_occupancy(0.0, 0.1, c);
  const auto pmf = sim::estimate_count_pmf(c);
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto dist = occ.distribution(n);
    CHECK(dist.size() == n + 1);
    CHECK(std::accumulate(dist.begin(), dist.end(), 0.0) == doctest::Approx(pmf.probability(n)).epsilon(1e-12));
  }
  const double limit = occ.mean_inside() / 0.2;
  const double se = occ.mean_inside_standard_error() / 0.2;
  const double exact = std::exp(1.0) * numerics::heat_kernel(1.0, 0.0);
  CHECK(exact == doctest::Approx(1.0844).epsilon(1e-4));
  CHECK(std::abs(limit - exact) <= 3.0 * se + 0.01 * exact);

  const auto wide = sim::estimate_ball_occupancy(0.0, 100.0, 3, config(1.0, 2000));
  CHECK(wide[0] == 0.0);
  CHECK(wide[1] == 0.0);
  CHECK(wide[2] == 0.0);
  CHECK(wide[3] > 0.0);
}

TEST_CASE("chi-square helper") {
  const std::vector<std::uint64_t> obs{25, 25, 25, 25};
  const std::vector<double> p{0.25, 0.25, 0.25, 0.25};
  const auto r = sim::chi_square_test(obs, p);
  CHECK(r.statistic == doctest::Approx(0.0));
  CHECK(r.degrees_of_freedom == 3);
  CHECK(r.p_value == doctest::Approx(1.0));
  const std::vector<std::uint64_t> skew{100, 0, 0, 0};
  CHECK(sim::chi_square_test(skew, p).p_value < 1e-10);
}
