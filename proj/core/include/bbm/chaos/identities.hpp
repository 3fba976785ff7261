#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bbm/chaos/expansion.hpp"

namespace bbm::chaos {

struct Bump {
  double amplitude = 1.0;
  double center = 0.0;
  double width = 1.0;

  double operator()(double x) const;
};

// A smooth, symmetric, rapidly decaying kernel of one order:
//   sum_r a_r prod_i phi_r(y_i) + b psi(y_1 + ... + y_n) prod_i beta(y_i).
// Only the parameters are random, so the same kernel can be sampled on
// several grids for refinement studies.
struct RandomKernelSpec {
  int order = 0;
  std::vector<Bump> products;
  double mixed_weight = 0.0;
  Bump psi;
  Bump beta;

  SampledKernel sample(const Grid1D& grid) const;
};

struct RandomExpansionSpec {
  std::vector<RandomKernelSpec> kernels;  // orders 0..top

  // Padded with zero kernels up to max_order.
  ChaosExpansion sample(const Grid1D& grid, int max_order) const;
};

RandomExpansionSpec random_expansion_spec(std::mt19937_64& rng, int top_order);
Bump random_bump(std::mt19937_64& rng);

struct IdentityCheck {
  std::string name;
  std::string kind;  // "exact" or "fd"
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<double> spacings;  // fd checks: refinement ladder
  std::vector<double> errors;
  double slope = 0.0;
};

struct IdentitySuiteConfig {
  std::uint64_t seed = 17;
  int random_cases = 3;
  // Exact identities: orders up to 4 on a coarse grid.
  double exact_half_width = 3.0;
  double exact_spacing = 0.25;
  double exact_tolerance = 1e-10;
  // Finite-difference identities: orders up to 3, refined.
  double fd_half_width = 4.5;
  std::vector<double> fd_spacings{0.2, 0.1, 0.05};
  double commutation_x = 0.6;
  double min_slope = 1.8;
  // An fd check also passes when its finest error is below this floor
  // (identities that the stencils satisfy exactly).
  double fd_floor = 1e-10;
  double vacuum_tolerance = 1e-6;
};

// S-transform multiplicativity, Wick unit and exponential rules, D_x E(f),
// the Wick-derivation rule, the adjoint identity, dGamma(d) E(h),
// both commutation relations and the vacuum identity.
std::vector<IdentityCheck> run_identity_suite(const IdentitySuiteConfig& config = {});

}  // namespace bbm::chaos
