#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bbm/chaos/expansion.hpp"
#include "bbm/chaos/identities.hpp"
#include "bbm/chaos/operators.hpp"
#include "bbm/chaos/phi.hpp"
#include "bbm/errors.hpp"
#include "bbm/hierarchy/kernels.hpp"
#include "bbm/hierarchy/mass.hpp"
#include "bbm/numerics/heat_kernel.hpp"
#include "bbm/numerics/tensor_ops.hpp"

using namespace bbm;
using namespace bbm::chaos;

namespace {

const Grid1D kGrid = Grid1D::symmetric(3.0, 0.25);

TestFunction bump(double amp, double center, double width, const Grid1D& g = kGrid) {
  const TestFunction cutoff = TestFunction::plateau(g, g.hi() - 1.5, 1.0);
  std::vector<double> v;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.point(i);
    v.push_back(amp * std::exp(-(x - center) * (x - center) / (2 * width * width)) * cutoff.values()[i]);
  }
  return TestFunction(g, v);
}

double integral_product(const TestFunction& f, const TestFunction& g) {
  const auto w = f.grid().trapezoid_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f.values()[i] * g.values()[i];
  return s;
}

}  // namespace

TEST_CASE("test functions") {
  CHECK_THROWS_AS(TestFunction(kGrid, std::vector<double>(kGrid.size(), 1.0)), std::invalid_argument);
  std::vector<double> v(kGrid.size(), 0.0);
  v[5] = std::nan("");
  CHECK_THROWS_AS(TestFunction(kGrid, v), std::invalid_argument);
  const auto p = TestFunction::plateau(kGrid, 1.0, 1.0);
  CHECK(p.values()[kGrid.nearest(0.0)] == 1.0);
  CHECK(p.values().front() == 0.0);
}

TEST_CASE("stochastic exponential") {
  const TestFunction zero(kGrid, std::vector<double>(kGrid.size(), 0.0));
  const auto E0 = stochastic_exponential(zero, 3);
  CHECK(E0.kernel(0).scalar_value() == 1.0);
  CHECK(numerics::max_abs(E0.kernel(1)) == 0.0);
  CHECK(numerics::max_abs(E0.kernel(3)) == 0.0);

  const TestFunction f = bump(0.6, 0.2, 0.5);
  const auto E = stochastic_exponential(f, 4);
  for (std::size_t a : {3u, 10u, 14u})
    for (std::size_t b : {5u, 12u}) {
      const std::size_t ab[2] = {a, b};
      CHECK(E.kernel(2).at(ab) == doctest::Approx(f.values()[a] * f.values()[b] / 2).epsilon(1e-15));
    }

  const TestFunction g = bump(0.8, -0.3, 0.6);
  const double fg = integral_product(f, g);
  const int N = 4;
  const double tail = std::pow(std::abs(fg), N + 1) / std::tgamma(N + 2) * std::exp(std::abs(fg));
  CHECK(std::abs(s_transform(E, g) - std::exp(fg)) <= tail);
}

TEST_CASE("s-transform special cases") {
  std::mt19937_64 rng(4);
  const auto X = random_expansion_spec(rng, 3).sample(kGrid, 3);
  const TestFunction zero(kGrid, std::vector<double>(kGrid.size(), 0.0));
  CHECK(s_transform(X, zero) == X.kernel(0).scalar_value());

  const TestFunction f = bump(0.7, 0.1, 0.4);
  const TestFunction g = bump(1.0, -0.4, 0.5);
  const auto I1 = first_order(g.as_kernel(), 2);
  CHECK(s_transform(I1, f) == doctest::Approx(integral_product(f, g)).epsilon(1e-14));
}

TEST_CASE("wick product") {
  std::mt19937_64 rng(8);
  const auto X = random_expansion_spec(rng, 2).sample(kGrid, 4);
  const auto Y = random_expansion_spec(rng, 2).sample(kGrid, 4);
  const auto one = ChaosExpansion::constant(1.0, 4, kGrid);
  CHECK(max_kernel_difference(wick_product(X, one).product, X) == 0.0);

  const auto XY = wick_product(X, Y, 4);
  CHECK_FALSE(XY.truncated);
  const TestFunction f = bump(0.5, 0.3, 0.5);
  const double lhs = s_transform(XY.product, f);
  const double rhs = s_transform(X, f) * s_transform(Y, f);
  CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));

  const auto cut = wick_product(X, Y, 3);
  CHECK(cut.truncated);
  CHECK(cut.dropped_tail_bound > 0.0);
  CHECK(cut.product.max_order() == 3);

  const TestFunction g = bump(-0.4, -0.5, 0.45);
  const auto lhsE = wick_product(stochastic_exponential(f, 4), stochastic_exponential(g, 4), 4).product;
  CHECK(max_kernel_difference(lhsE, stochastic_exponential(f + g, 4)) <= 1e-10);

  CHECK_THROWS_AS(wick_product(X, ChaosExpansion::zero(2, Grid1D(-3.0, 3.0, 7))), ShapeError);
}

TEST_CASE("malliavin derivative") {
  const TestFunction f = bump(0.9, 0.2, 0.5);
  const auto E = stochastic_exponential(f, 4);
  for (std::size_t node : {4u, 12u, 18u}) {
    const auto D = malliavin_derivative_at_node(E, node);
    CHECK(D.max_order() == 3);
    for (int n = 0; n <= 3; ++n)
      CHECK(numerics::max_abs_difference(D.kernel(n), numerics::scaled(f.values()[node], E.kernel(n))) <= 1e-12);
  }
  const auto c = malliavin_derivative(ChaosExpansion::constant(2.0, 0, kGrid), 0.0);
  CHECK(c.derivative.max_order() == 0);
  CHECK(c.derivative.kernel(0).scalar_value() == 0.0);

  const auto on = malliavin_derivative(E, kGrid.point(10));
  CHECK_FALSE(on.interpolated);
  const auto off = malliavin_derivative(E, kGrid.point(10) + 0.1);
  CHECK(off.interpolated);

  std::mt19937_64 rng(21);
  const auto X = random_expansion_spec(rng, 2).sample(kGrid, 4);
  const auto Y = random_expansion_spec(rng, 2).sample(kGrid, 4);
  const auto XY = wick_product(X, Y, 4).product;
  const std::size_t node = 9;
  const auto lhs = malliavin_derivative_at_node(XY, node);
  const auto rhs = add(wick_product(malliavin_derivative_at_node(X, node), Y, 3).product,
                       wick_product(X, malliavin_derivative_at_node(Y, node), 3).product);
  CHECK(max_kernel_difference(lhs, rhs) <= 1e-10);
}

TEST_CASE("second quantization keeps symmetry") {
  std::mt19937_64 rng(2);
  const auto X = random_expansion_spec(rng, 3).sample(kGrid, 3);
  const auto dX = second_quantization_d(X);
  const auto d2X = second_quantization_d_squared(X);
  for (int n = 0; n <= 3; ++n) {
    CHECK(numerics::is_exactly_symmetric(dX.kernel(n)));
    CHECK(numerics::is_exactly_symmetric(d2X.kernel(n)));
  }
  CHECK(dX.kernel(0).scalar_value() == 0.0);
}

TEST_CASE("identity suite") {
  const auto checks = run_identity_suite();
  CHECK(checks.size() == 10);
  for (const auto& c : checks) {
    INFO(c.name << " error " << c.max_error << " slope " << c.slope);
    CHECK(c.pass);
  }
}

TEST_CASE("phi from the hierarchy") {
  SUBCASE("initial value is the grid delta") {
    const auto W = phi_from_hierarchy(0.0, 2, kGrid);
    const std::size_t origin = kGrid.nearest(0.0);
    CHECK(W.kernel(1)[origin] == doctest::Approx(1.0 / kGrid.spacing()));
    CHECK(numerics::integrate(W.kernel(1)) == doctest::Approx(1.0));
    CHECK(numerics::max_abs(W.kernel(2)) == 0.0);
    CHECK(W.kernel(0).scalar_value() == 0.0);
  }
  SUBCASE("order-1 kernel is e^{-t} p_t") {
    const auto phi = phi_from_hierarchy(0.7, 2, kGrid);
    for (std::size_t i = 0; i < kGrid.size(); ++i)
      CHECK(phi.kernel(1)[i] == doctest::Approx(std::exp(-0.7) * numerics::heat_kernel(0.7, kGrid.point(i))));
    CHECK_THROWS_AS(phi_from_hierarchy(0.7, 3, kGrid), CapacityError);
  }
  SUBCASE("pairing with E(1) recovers m_1 + m_2") {
    // The order-2 trapezoid rule converges at h^2 (the kernel has a kink on the
    // diagonal), so one Richardson step removes the leading error.
    auto pairing_at = [](double h) {
      const Grid1D g = Grid1D::symmetric(5.0, h);
      return s_transform(phi_from_hierarchy(0.5, 2, g), TestFunction::plateau(g, 4.0, 0.5));
    };
    const double coarse = pairing_at(0.05);
    const double fine = pairing_at(0.025);
    const double extrapolated = fine + (fine - coarse) / 3.0;
    const auto m = hierarchy::mass_recursion(2, 0.5, 10000);
    CHECK(std::abs(extrapolated - (m(1) + m(2))) <= 1e-5);
  }
}

TEST_CASE("abstract equation") {
  const Grid1D g = Grid1D::symmetric(5.0, 0.1);
  const double dt = 0.005;
  const auto before = phi_from_hierarchy(1.0 - dt, 2, g);
  const auto now = phi_from_hierarchy(1.0, 2, g);
  const auto after = phi_from_hierarchy(1.0 + dt, 2, g);
  const auto r = phi_equation_residual(before, now, after, dt);
  CHECK(r.max_interior[0] == 0.0);
  CHECK(r.max_interior[1] < 3e-4);
  CHECK(r.max_interior[2] < 3e-4);
  CHECK(r.wick_square_top == numerics::sym_tensor_product(now.kernel(1), now.kernel(1)));

  const auto direct = phi_equation_residual(1.0, dt, 2, g);
  CHECK(direct.max_interior == r.max_interior);
}

TEST_CASE("concentration through the malliavin derivative") {
  const Grid1D g = Grid1D::symmetric(8.0, 0.05);
  const auto phi = phi_from_hierarchy(0.5, 2, g);
  const double c0 = std::exp(0.5) / std::sqrt(std::numbers::pi);
  CHECK(c0 == doctest::Approx(0.93019).epsilon(1e-5));
  const auto at0 = concentration_via_malliavin(phi, 0.5, 0.0);
  CHECK(std::abs(at0.truncated - concentration_direct(phi, 0.0)) <= 1e-8);
  CHECK(std::abs(at0.corrected - c0) <= 0.02 * c0);
  CHECK(at0.tail > 0.0);

  const double x = g.point(g.nearest(0.75));
  CHECK(concentration_via_malliavin(phi, 0.5, x).truncated ==
        doctest::Approx(concentration_via_malliavin(phi, 0.5, -x).truncated).epsilon(1e-12));
}
