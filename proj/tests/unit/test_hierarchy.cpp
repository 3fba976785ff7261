#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bbm/errors.hpp"
#include "bbm/hierarchy/kernels.hpp"
#include "bbm/hierarchy/mass.hpp"
#include "bbm/hierarchy/residuals.hpp"
#include "bbm/hierarchy/semianalytic.hpp"
#include "bbm/numerics/heat_kernel.hpp"
#include "bbm/numerics/tensor_ops.hpp"

using namespace bbm;
using namespace bbm::hierarchy;
using numerics::Grid1D;

TEST_CASE("g_1 closed form") {
  CHECK(eval_g1(1.0, 0.0, 0.0) == doctest::Approx(std::exp(-1.0) / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-8));
  CHECK(std::abs(eval_g1(1.0, 0.0, 0.0) - 0.14676) < 1e-5);
  CHECK(eval_g1(0.8, 0.3, -1.1) == eval_g1(0.8, -1.1, 0.3));
  CHECK_THROWS_AS(eval_g1(0.0, 0.0, 0.0), std::domain_error);

  const Grid1D g(-10.0, 10.0, 2001);
  const auto k = numerics::SampledKernel::from_function(1, g, [](auto y) { return eval_g1(1.3, 0.4, y[0]); });
  CHECK(numerics::integrate(k) == doctest::Approx(std::exp(-1.3)).epsilon(1e-9));
}

TEST_CASE("g_2 quadrature against the semi-analytic reduction") {
  const double y0[2] = {0.0, 0.0};
  const double a = eval_gn(2, 1.0, 0.0, y0);
  const double b = g2_semianalytic(1.0, 0.0, 0.0, 0.0);
  CHECK(std::abs(a - b) / b <= 1e-3);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ut(0.5, 2.0), ux(-1.0, 1.0), uy(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const double t = ut(rng), x = ux(rng);
    const double y[2] = {uy(rng), uy(rng)};
    const double q = eval_gn(2, t, x, y);
    const double s = g2_semianalytic(t, x, y[0], y[1]);
    CHECK(std::abs(q - s) / s <= 1e-3);
  }
}

TEST_CASE("semi-analytic g_2") {
  CHECK(g2_semianalytic(0.7, 0.2, -0.5, 1.1) == g2_semianalytic(0.7, 0.2, 1.1, -0.5));
  CHECK_THROWS_AS(g2_semianalytic(0.0, 0.0, 0.0, 0.0), std::domain_error);

  // Mass m_2(1): integrate in (d, ybar) = (y1 - y2, (y1 + y2) / 2), unit
  // Jacobian, using the symmetry in d so that the kink at d = 0 sits on the
  // end of the d range. Simpson in both directions.
  auto simpson = [](auto&& f, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double s = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    return s * h / 3.0;
  };
  const double mass = 2.0 * simpson(
                                [&](double d) {
                                  return simpson(
                                      [&](double yb) { return g2_semianalytic(1.0, 0.0, yb + d / 2, yb - d / 2); },
                                      -7.0, 7.0, 70);
                                },
                                0.0, 9.0, 90);
  CHECK(std::abs(mass - std::exp(-1.0) * (1.0 - std::exp(-1.0))) <= 1e-4);
  CHECK(std::abs(mass - 0.23254) <= 1e-4);
}

TEST_CASE("kernels are symmetric and nonnegative") {
  const double y3[3] = {0.4, -0.2, 0.9};
  const double base = eval_gn(3, 1.0, 0.1, y3);
  CHECK(base > 0.0);
  double perm[3] = {0.4, -0.2, 0.9};
  std::sort(perm, perm + 3);
  do {
    CHECK(eval_gn(3, 1.0, 0.1, perm) == base);
  } while (std::next_permutation(perm, perm + 3));

  const double y2a[2] = {0.3, -0.7};
  const double y2b[2] = {-0.7, 0.3};
  CHECK(eval_gn(2, 1.0, 0.0, y2a) == eval_gn(2, 1.0, 0.0, y2b));

  const double y4[4] = {0.0, 0.5, -0.5, 1.0};
  CHECK(eval_gn(4, 0.8, 0.0, y4) > 0.0);

  const Grid1D g(-4.0, 4.0, 41);
  const auto k = rho_kernel(2, 1.0, g);
  CHECK(numerics::is_exactly_symmetric(k));
  CHECK(*std::min_element(k.values().begin(), k.values().end()) >= 0.0);
}

TEST_CASE("errors") {
  const double y5[5] = {0, 0, 0, 0, 0};
  CHECK_THROWS_AS(eval_gn(5, 1.0, 0.0, y5), CapacityError);
  QuadratureConfig coarse;
  coarse.time_substeps = 4;
  const double y2[2] = {0.0, 0.0};
  CHECK_THROWS_AS(eval_gn(2, 1.0, 0.0, y2, coarse), ConfigError);
  CHECK_THROWS_AS(rho_kernel(3, 1.0, Grid1D(-1.0, 1.0, 11)), CapacityError);
  CHECK_THROWS_AS(eval_gn(2, 0.0, 0.0, y2), std::domain_error);
}

TEST_CASE("kernel identity: rho_n is independent of the reference point") {
  for (double y : {-1.5, 0.0, 0.8}) {
    const double ys[1] = {y};
    const double expected = std::exp(-1.0) * numerics::heat_kernel(1.0, y);
    CHECK(rho_from_g(1, 1.0, 0.0, ys) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(rho_from_g(1, 1.0, 1.7, ys) - expected) <= 1e-6 * expected);
  }
  const double ys[2] = {0.5, -0.3};
  const double a = rho_from_g(2, 1.0, 0.0, ys);
  const double b = rho_from_g(2, 1.0, 1.7, ys);
  CHECK(std::abs(a - b) / a <= 1e-3);

  const HierarchyKernel hk(2, 1.0);
  CHECK(hk.rho(ys) == a);
}

TEST_CASE("grid kernel matches pointwise evaluation") {
  const Grid1D g(-3.0, 3.0, 31);
  const auto k = rho_kernel(2, 1.0, g);
  for (std::size_t i : {0u, 7u, 15u, 22u})
    for (std::size_t j : {3u, 15u, 30u}) {
      const std::size_t idx[2] = {i, j};
      const double ys[2] = {g.point(i), g.point(j)};
      const double p = rho_from_g(2, 1.0, 0.0, ys);
      CHECK(std::abs(k.at(idx) - p) <= 1e-3 * p + 1e-12);
    }
}

TEST_CASE("small times") {
  const double far[2] = {1.0, -1.0};
  CHECK(eval_gn(2, 1e-3, 0.0, far) < 1e-12);
  const auto m = mass_recursion(3, 1e-3, 100);
  CHECK(m(2) < 1.1e-3);
}

TEST_CASE("mass recursion") {
  for (double t : {0.5, 1.0, 2.0}) {
    const auto m = mass_recursion(10, t, 10000);
    for (std::size_t n = 1; n <= 10; ++n) CHECK(std::abs(m(n) - geometric_mass(n, t)) <= 1e-6);
  }
  CHECK(std::abs(mass_recursion(40, 1.0, 10000).total() - 1.0) <= 1e-6);
  const auto zero = mass_recursion(5, 0.0, 10);
  CHECK(zero(1) == 1.0);
  for (std::size_t n = 2; n <= 5; ++n) CHECK(zero(n) == 0.0);

  // same recursion on the eval_gn time nodes
  std::vector<double> nodes{0.0};
  for (double s : quadrature_time_nodes(1.0, 0.02, QuadratureConfig{})) nodes.push_back(s);
  const auto mq = mass_recursion(6, nodes);
  for (std::size_t n = 1; n <= 6; ++n) CHECK(std::abs(mq(n) - geometric_mass(n, 1.0)) <= 1e-4);
}

TEST_CASE("CDME and system residuals vanish at second order") {
  const Grid1D g = Grid1D::symmetric(6.0, 0.02);
  CHECK(cdme_residual(1, 1.0, g, 1e-3).max_interior <= 1e-4);

  const std::vector<double> hs{0.2, 0.1};
  const auto s1 = cdme_refinement(1, 1.0, 5.0, hs, 0.05);
  CHECK(s1.slope >= 1.8);
  const auto s2 = cdme_refinement(2, 1.0, 5.0, hs, 0.05);
  CHECK(s2.slope >= 1.8);
  CHECK(s2.errors.back() < 2e-4);

  const double y1[1] = {0.3};
  const double y2[2] = {0.3, -0.4};
  CHECK(system_pde_refinement(1.0, y1, 5.0, hs, 0.05).slope >= 1.8);
  CHECK(system_pde_refinement(1.0, y2, 4.0, hs, 0.05).slope >= 1.8);

  const auto r = cdme_residual(1, 1.0, Grid1D(-4.0, 4.0, 41), 1e-3);
  CHECK(r.field.values().front() == 0.0);
  CHECK_THROWS_AS(cdme_residual(3, 1.0, g, 1e-3), CapacityError);
  CHECK_THROWS(cdme_residual(1, 1e-4, g, 1e-3));
}
