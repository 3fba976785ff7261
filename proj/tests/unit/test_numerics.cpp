#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bbm/errors.hpp"
#include "bbm/numerics/convergence.hpp"
#include "bbm/numerics/derivative.hpp"
#include "bbm/numerics/field.hpp"
#include "bbm/numerics/grid.hpp"
#include "bbm/numerics/heat_kernel.hpp"
#include "bbm/numerics/sampled_kernel.hpp"
#include "bbm/numerics/serialize.hpp"
#include "bbm/numerics/tensor_ops.hpp"

using namespace bbm::numerics;

namespace {

SampledKernel random_kernel(int order, const Grid1D& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SampledKernel k(order, g);
  for (double& v : k.values()) v = u(rng);
  return k;
}

// Brute-force average over every axis permutation.
SampledKernel permutation_average(const SampledKernel& k) {
  SampledKernel out(k.order(), k.grid());
  const auto perms = all_permutations(k.order());
  std::vector<std::size_t> idx(k.order()), p(k.order());
  for (std::size_t f = 0; f < k.size(); ++f) {
    k.unravel(f, idx);
    double sum = 0.0;
    for (const auto& perm : perms) {
      for (int a = 0; a < k.order(); ++a) p[a] = idx[perm[a]];
      sum += k.at(p);
    }
    out[f] = sum / static_cast<double>(perms.size());
  }
  return out;
}

}  // namespace

TEST_CASE("grid nodes are reconstructible and validated") {
  const Grid1D g(-2.0, 3.0, 11);
  CHECK(g.spacing() == doctest::Approx(0.5));
  CHECK(g.point(0) == -2.0);
  CHECK(g.point(10) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(g.nearest(0.26) == 5);
  CHECK(g.nearest(-100.0) == 0);
  CHECK(g.nearest(100.0) == 10);
  CHECK_THROWS(Grid1D(1.0, 1.0, 5));
  CHECK_THROWS(Grid1D(0.0, 1.0, 1));
  const TimeGrid tg(2.0, 8);
  CHECK(tg.dt() == 0.25);
  CHECK(tg.node(3) == 0.75);
}

TEST_CASE("heat kernel") {
  CHECK(heat_kernel(1.0, 0.0) == doctest::Approx(0.3989422804).epsilon(1e-9));
  CHECK(heat_kernel(0.7, 1.3) == heat_kernel(0.7, -1.3));
  CHECK_THROWS_AS(heat_kernel(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(heat_kernel(-1.0, 1.0), std::domain_error);

  const Grid1D g(-8.0, 8.0, 1601);
  const SampledKernel k = SampledKernel::from_function(1, g, [](auto x) { return heat_kernel(0.5, x[0] - 0.3); });
  CHECK(integrate(k) == doctest::Approx(1.0).epsilon(1e-6));
  const SampledKernel k1 = SampledKernel::from_function(1, g, [](auto x) { return heat_kernel(1.0, x[0]); });
  CHECK(std::abs(integrate(k1) - 1.0) < 1e-6);
}

TEST_CASE("symmetrize") {
  std::mt19937_64 rng(3);
  const Grid1D g(0.0, 1.0, 5);

  SUBCASE("order 2 formula") {
    const SampledKernel a = random_kernel(2, g, rng);
    const SampledKernel s = symmetrize(a);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        const std::size_t ij[2] = {i, j}, ji[2] = {j, i};
        CHECK(s.at(ij) == doctest::Approx((a.at(ij) + a.at(ji)) / 2).epsilon(1e-15));
      }
  }
  SUBCASE("order 3 against brute-force permutations") {
    const SampledKernel a = random_kernel(3, g, rng);
    CHECK(max_abs_difference(symmetrize(a), permutation_average(a)) < 1e-15);
  }
  SUBCASE("idempotent projection, exact") {
    const SampledKernel s = symmetrize(random_kernel(3, g, rng));
    CHECK(is_exactly_symmetric(s));
    CHECK(symmetrize(s) == s);
  }
  SUBCASE("grid mismatch") {
    CHECK_THROWS_AS(axpy(1.0, random_kernel(1, g, rng), random_kernel(1, Grid1D(0.0, 2.0, 5), rng)),
                    bbm::ShapeError);
  }
}

TEST_CASE("symmetric tensor product") {
  std::mt19937_64 rng(5);
  const Grid1D g(-1.0, 1.0, 7);
  const SampledKernel f = random_kernel(1, g, rng);
  const SampledKernel h = random_kernel(1, g, rng);
  const SampledKernel fh = sym_tensor_product(f, h);
  for (std::size_t a = 0; a < 7; ++a)
    for (std::size_t b = 0; b < 7; ++b) {
      const std::size_t ab[2] = {a, b};
      CHECK(fh.at(ab) == doctest::Approx((f[a] * h[b] + f[b] * h[a]) / 2).epsilon(1e-15));
    }
  CHECK(sym_tensor_product(f, f) == tensor_product(f, f));
  CHECK(sym_tensor_product(f, h) == sym_tensor_product(h, f));

  const SampledKernel k2 = symmetrize(random_kernel(2, g, rng));
  const SampledKernel k1 = random_kernel(1, g, rng);
  const SampledKernel p = sym_tensor_product(k2, k1);
  CHECK(is_exactly_symmetric(p));
  CHECK(sym_tensor_product(k1, k2) == p);
  const double lhs = integrate(p);
  const double rhs = integrate(k2) * integrate(k1);
  CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));

  CHECK_THROWS_AS(sym_tensor_product(p, sym_tensor_product(f, h)), bbm::CapacityError);
  CHECK_NOTHROW(sym_tensor_product(p, sym_tensor_product(f, h), 5));
}

TEST_CASE("integrate") {
  const Grid1D g(0.0, 1.0, 9);
  for (int n = 0; n <= 3; ++n) {
    SampledKernel one(n, g);
    for (double& v : one.values()) v = 1.0;
    CHECK(integrate(one) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(integrate(SampledKernel::scalar(2.5, g)) == 2.5);

  const Grid1D wide(-8.0, 8.0, 1601);
  const SampledKernel g1 =
      SampledKernel::from_function(1, wide, [](auto y) { return std::exp(-1.0) * heat_kernel(1.0, y[0]); });
  CHECK(std::abs(integrate(g1) - std::exp(-1.0)) < 1e-5);
}

TEST_CASE("grid derivatives") {
  SUBCASE("sin converges at second order") {
    std::vector<double> hs, es;
    for (std::size_t n : {41, 81, 161, 321}) {
      const Grid1D g(0.0, 3.0, n);
      const auto k = SampledKernel::from_function(1, g, [](auto x) { return std::sin(x[0]); });
      const auto d = grid_derivative(k, 0, 1);
      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(d[i] - std::cos(g.point(i))));
      hs.push_back(g.spacing());
      es.push_back(err);
    }
    const double slope = convergence_slope(hs, es);
    CHECK(slope >= 1.8);
    CHECK(slope <= 2.2);
  }
  SUBCASE("x^2 second derivative is exact") {
    const Grid1D g(-1.0, 2.0, 31);
    const auto k = SampledKernel::from_function(1, g, [](auto x) { return x[0] * x[0]; });
    const auto d = grid_derivative(k, 0, 2);
    for (std::size_t i = 1; i + 1 < g.size(); ++i) CHECK(d[i] == doctest::Approx(2.0).epsilon(1e-8));
  }
  SUBCASE("mixed derivative of a product") {
    double prev = 0.0;
    for (std::size_t n : {41, 81}) {
      const Grid1D g(-1.0, 1.0, n);
      const auto k = SampledKernel::from_function(2, g, [](auto y) { return std::sin(y[0]) * std::exp(y[1]); });
      const auto d = mixed_derivative(k, 0, 1);
      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const std::size_t ij[2] = {i, j};
          err = std::max(err, std::abs(d.at(ij) - std::cos(g.point(i)) * std::exp(g.point(j))));
        }
      if (prev > 0.0) CHECK(prev / err > 3.5);
      prev = err;
    }
  }
  SUBCASE("all-ones direction matches the cross laplacian on smooth kernels") {
    // both are second order, so the gap shrinks about 4x per halving
    std::vector<double> gaps;
    for (std::size_t n : {81, 161, 321}) {
      const Grid1D g(-2.0, 2.0, n);
      const auto k = SampledKernel::from_function(2, g, [](auto y) { return std::exp(-y[0] * y[0] - 0.5 * y[1] * y[1]); });
      const auto a = diagonal_derivative(k, 2);
      const auto b = full_cross_laplacian(k);
      // away from the corners, where diagonal lines get too short for the stencil
      double gap = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (std::abs(g.point(i)) > 1.5 || std::abs(g.point(j)) > 1.5) continue;
          const std::size_t ij[2] = {i, j};
          gap = std::max(gap, std::abs(a.at(ij) - b.at(ij)));
        }
      gaps.push_back(gap);
    }
    CHECK(gaps[0] / gaps[1] > 3.5);
    CHECK(gaps[1] / gaps[2] > 3.5);
  }
  SUBCASE("errors") {
    const Grid1D g(0.0, 1.0, 11);
    SampledKernel k(1, g);
    CHECK_THROWS_AS(grid_derivative(k, 1, 1), std::out_of_range);
    CHECK_THROWS(grid_derivative(SampledKernel(1, Grid1D(0.0, 1.0, 4)), 0, 1));
  }
}

TEST_CASE("serialization round trip is exact") {
  std::mt19937_64 rng(11);
  const Grid1D g(-0.3, 1.7, 6);
  const SampledKernel k = symmetrize(random_kernel(3, g, rng));
  const auto text = to_json(k).dump();
  CHECK(kernel_from_json(nlohmann::json::parse(text)) == k);
  CHECK(grid_from_json(to_json(g)) == g);
}

TEST_CASE("field interpolation and integral") {
  const Field1D f = Field1D::from_function(Grid1D(0.0, 2.0, 5), [](double x) { return 3.0 * x + 1.0; });
  CHECK(f.interpolate(0.75) == doctest::Approx(3.25));
  CHECK(f.interpolate(-1.0) == 1.0);
  CHECK(f.interpolate(5.0) == 7.0);
  CHECK(f.integral() == doctest::Approx(8.0));
}
