#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "bbm/numerics/field.hpp"
#include "bbm/numerics/grid.hpp"
#include "bbm/numerics/sampled_kernel.hpp"
#include "bbm/sim/config.hpp"

namespace bbm::sim {

// Empirical law of n(t_final).
struct CountPmf {
  std::uint64_t trials = 0;
  std::map<std::size_t, std::uint64_t> counts;

  double probability(std::size_t n) const;
  // sqrt(p (1 - p) / trials)
  double standard_error(std::size_t n) const;
  std::size_t max_count() const;
  double mean() const;
  double mean_standard_error() const;
};

CountPmf estimate_count_pmf(const SimConfig& config);

// Bins are centred on grid nodes: node i collects [x_i - h/2, x_i + h/2).
// Every sample is entered under all its orderings (n! for joint histograms,
// n for marginals), so the counts are exactly symmetric and density() needs
// no further symmetrization.
struct Histogram {
  int order = 1;
  numerics::Grid1D grid{0.0, 1.0, 2};
  std::uint64_t trials = 0;
  std::uint64_t matched_trials = 0;   // trials with n(t) = n
  std::uint64_t out_of_range = 0;     // matched samples with a coordinate outside the bins
  double orderings = 1.0;
  std::vector<std::uint64_t> counts;  // row-major like SampledKernel
  std::vector<std::uint64_t> sum_sq;  // per-bin sum over trials of (trial count)^2

  bool empty() const noexcept { return matched_trials == 0; }
  double bin_volume() const;

  // counts / (trials * orderings * bin volume): integrates to the estimate of
  // P(n(t) = n) restricted to the binned region.
  numerics::SampledKernel density() const;
  // Bin sum of density() * bin volume.
  double mass() const;
  numerics::SampledKernel standard_error() const;
};

// Joint histogram of rho_n for n in {1, 2}; CapacityError otherwise.
Histogram estimate_density(int n, const SimConfig& config, const numerics::Grid1D& grid);

// One-dimensional marginal of rho_n for any n >= 1: integrates the joint
// density over all but one coordinate. For n = 1 it equals estimate_density.
Histogram estimate_marginal_density(int n, const SimConfig& config, const numerics::Grid1D& grid);

struct McKeanPoint {
  double x;
  double estimate;
  double standard_error;
};

// E[prod_k f(x - X_k(t))] with f linearly interpolated (constant extension).
// Values of f outside [0, 1] -> std::domain_error.
std::vector<McKeanPoint> estimate_mckean(const numerics::Field1D& f,
                                         std::span<const double> x_values,
                                         const SimConfig& config);

struct ConcentrationEstimate {
  numerics::Field1D field;
  std::vector<double> standard_error;
  double mean_count = 0.0;  // E n(t)
  double mean_count_standard_error = 0.0;
  std::uint64_t out_of_range = 0;
};

// Particle counts per bin over all trials / (trials * bin width).
ConcentrationEstimate estimate_concentration(const SimConfig& config,
                                             const numerics::Grid1D& grid);

// Number of particles in (x - eps, x + eps), tabulated per n(t).
struct BallOccupancy {
  double x = 0.0;
  double epsilon = 0.0;
  std::uint64_t trials = 0;
  // n -> counts[k], k = 0..n
  std::map<std::size_t, std::vector<std::uint64_t>> counts;
  std::uint64_t inside_sum = 0;
  std::uint64_t inside_sum_sq = 0;

  // p^eps_{k, n-k}: probability that n(t) = n and exactly k particles are inside.
  double probability(std::size_t n, std::size_t k) const;
  std::vector<double> distribution(std::size_t n) const;
  // E[#particles inside] and its standard error.
  double mean_inside() const;
  double mean_inside_standard_error() const;
};

BallOccupancy estimate_ball_occupancy(double x, double epsilon, const SimConfig& config);

// k -> p^eps_{k, n-k}, k = 0..n.
std::vector<double> estimate_ball_occupancy(double x, double epsilon, std::size_t n,
                                            const SimConfig& config);

}  // namespace bbm::sim
