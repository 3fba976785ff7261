#include "bbm/sim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bbm/errors.hpp"
#include "bbm/sim/trial_runner.hpp"

namespace bbm::sim {
namespace {

using numerics::Grid1D;

// Node whose half-open bin [x_i - h/2, x_i + h/2) contains x, or -1.
long bin_of(const Grid1D& g, double x) {
  const double r = std::floor((x - g.lo()) / g.spacing() + 0.5);
  if (!(r >= 0.0) || r >= static_cast<double>(g.size())) return -1;
  return static_cast<long>(r);
}

// Adds one trial's bin hits (with multiplicity) to counts and squared counts.
void add_trial_hits(std::vector<std::size_t>& hits, std::vector<std::uint64_t>& counts,
                    std::vector<std::uint64_t>& sum_sq) {
  std::sort(hits.begin(), hits.end());
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i;
    while (j < hits.size() && hits[j] == hits[i]) ++j;
    const std::uint64_t c = j - i;
    counts[hits[i]] += c;
    sum_sq[hits[i]] += c * c;
    i = j;
  }
  hits.clear();
}

double sample_se(double sum, double sum_sq, std::uint64_t trials) {
  const double t = static_cast<double>(trials);
  const double mean = sum / t;
  if (trials < 2) return 0.0;
  const double var = std::max(0.0, (sum_sq / t - mean * mean) * t / (t - 1.0));
  return std::sqrt(var / t);
}

struct HistPartial {
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> sum_sq;
  std::uint64_t matched = 0;
  std::uint64_t out_of_range = 0;
  std::vector<std::size_t> scratch;
};

void merge_hist(HistPartial& into, const HistPartial& from) {
  for (std::size_t i = 0; i < into.counts.size(); ++i) {
    into.counts[i] += from.counts[i];
    into.sum_sq[i] += from.sum_sq[i];
  }
  into.matched += from.matched;
  into.out_of_range += from.out_of_range;
}

Histogram make_histogram(int order, std::size_t n, const SimConfig& config, const Grid1D& grid,
                         bool joint) {
  const std::size_t nodes = grid.size();
  const std::size_t cells = joint && order == 2 ? nodes * nodes : nodes;
  HistPartial identity;
  identity.counts.assign(cells, 0);
  identity.sum_sq.assign(cells, 0);

  auto per_trial = [&](HistPartial& acc, std::uint64_t, const ParticleSystem& ps) {
    if (ps.count() != n) return;
    ++acc.matched;
    if (joint && order == 2) {
      const long i = bin_of(grid, ps.positions[0]);
      const long j = bin_of(grid, ps.positions[1]);
      if (i < 0 || j < 0) {
        ++acc.out_of_range;
        return;
      }
      const auto a = static_cast<std::size_t>(i);
      const auto b = static_cast<std::size_t>(j);
      acc.scratch.push_back(a * nodes + b);
      acc.scratch.push_back(b * nodes + a);
    } else {
      for (double x : ps.positions) {
        const long i = bin_of(grid, x);
        if (i < 0) {
          ++acc.out_of_range;
        } else {
          acc.scratch.push_back(static_cast<std::size_t>(i));
        }
      }
    }
    add_trial_hits(acc.scratch, acc.counts, acc.sum_sq);
  };

  HistPartial total = reduce_trials(config, identity, per_trial, merge_hist);
  Histogram h;
  h.order = order;
  h.grid = grid;
  h.trials = config.trials;
  h.matched_trials = total.matched;
  h.out_of_range = total.out_of_range;
  h.orderings = static_cast<double>(joint && order == 2 ? 2 : n);
  h.counts = std::move(total.counts);
  h.sum_sq = std::move(total.sum_sq);
  return h;
}

}  // namespace

double CountPmf::probability(std::size_t n) const {
  const auto it = counts.find(n);
  if (it == counts.end() || trials == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(trials);
}

double CountPmf::standard_error(std::size_t n) const {
  if (trials == 0) return 0.0;
  const double p = probability(n);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

std::size_t CountPmf::max_count() const { return counts.empty() ? 0 : counts.rbegin()->first; }

double CountPmf::mean() const {
  double s = 0.0;
  for (const auto& [n, c] : counts) s += static_cast<double>(n) * static_cast<double>(c);
  return s / static_cast<double>(trials);
}

double CountPmf::mean_standard_error() const {
  double s = 0.0;
  double s2 = 0.0;
  for (const auto& [n, c] : counts) {
    const double nd = static_cast<double>(n);
    s += nd * static_cast<double>(c);
    s2 += nd * nd * static_cast<double>(c);
  }
  return sample_se(s, s2, trials);
}

CountPmf estimate_count_pmf(const SimConfig& config) {
  CountPmf identity;
  auto per_trial = [](CountPmf& acc, std::uint64_t, const ParticleSystem& ps) {
    ++acc.counts[ps.count()];
    ++acc.trials;
  };
  auto merge = [](CountPmf& into, const CountPmf& from) {
    for (const auto& [n, c] : from.counts) into.counts[n] += c;
    into.trials += from.trials;
  };
  return reduce_trials(config, identity, per_trial, merge);
}

double Histogram::bin_volume() const { return std::pow(grid.spacing(), order); }

numerics::SampledKernel Histogram::density() const {
  numerics::SampledKernel k(order, grid);
  const double scale = 1.0 / (static_cast<double>(trials) * orderings * bin_volume());
  for (std::size_t i = 0; i < counts.size(); ++i) k[i] = static_cast<double>(counts[i]) * scale;
  return k;
}

double Histogram::mass() const {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return static_cast<double>(total) / (static_cast<double>(trials) * orderings);
}

numerics::SampledKernel Histogram::standard_error() const {
  numerics::SampledKernel k(order, grid);
  const double scale = 1.0 / (orderings * bin_volume());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    k[i] = scale * sample_se(static_cast<double>(counts[i]), static_cast<double>(sum_sq[i]), trials);
  }
  return k;
}

Histogram estimate_density(int n, const SimConfig& config, const Grid1D& grid) {
  if (n != 1 && n != 2) {
    throw CapacityError("estimate_density: joint histograms are limited to n <= 2");
  }
  return make_histogram(n, static_cast<std::size_t>(n), config, grid, true);
}

Histogram estimate_marginal_density(int n, const SimConfig& config, const Grid1D& grid) {
  if (n < 1) throw std::invalid_argument("estimate_marginal_density: n must be >= 1");
  return make_histogram(1, static_cast<std::size_t>(n), config, grid, false);
}

std::vector<McKeanPoint> estimate_mckean(const numerics::Field1D& f,
                                         std::span<const double> x_values,
                                         const SimConfig& config) {
  for (double v : f.values) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("estimate_mckean: f must take values in [0, 1]");
  }
  struct Partial {
    std::vector<double> sum;
    std::vector<double> sum_sq;
  };
  const std::size_t m = x_values.size();
  Partial identity{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
  auto per_trial = [&](Partial& acc, std::uint64_t, const ParticleSystem& ps) {
    for (std::size_t i = 0; i < m; ++i) {
      double prod = 1.0;
      for (double xk : ps.positions) {
        prod *= f.interpolate(x_values[i] - xk);
        if (prod == 0.0) break;
      }
      acc.sum[i] += prod;
      acc.sum_sq[i] += prod * prod;
    }
  };
  auto merge = [](Partial& into, const Partial& from) {
    for (std::size_t i = 0; i < into.sum.size(); ++i) {
      into.sum[i] += from.sum[i];
      into.sum_sq[i] += from.sum_sq[i];
    }
  };
  const Partial total = reduce_trials(config, identity, per_trial, merge);
  std::vector<McKeanPoint> out;
  out.reserve(m);
  const double t = static_cast<double>(config.trials);
  for (std::size_t i = 0; i < m; ++i) {
    out.push_back({x_values[i], total.sum[i] / t, sample_se(total.sum[i], total.sum_sq[i], config.trials)});
  }
  return out;
}

ConcentrationEstimate estimate_concentration(const SimConfig& config, const Grid1D& grid) {
  struct Partial {
    HistPartial hist;
    std::uint64_t particles = 0;
    std::uint64_t particles_sq = 0;
  };
  Partial identity;
  identity.hist.counts.assign(grid.size(), 0);
  identity.hist.sum_sq.assign(grid.size(), 0);
  auto per_trial = [&](Partial& acc, std::uint64_t, const ParticleSystem& ps) {
    const std::uint64_t n = ps.count();
    acc.particles += n;
    acc.particles_sq += n * n;
    for (double x : ps.positions) {
      const long i = bin_of(grid, x);
      if (i < 0) {
        ++acc.hist.out_of_range;
      } else {
        acc.hist.scratch.push_back(static_cast<std::size_t>(i));
      }
    }
    add_trial_hits(acc.hist.scratch, acc.hist.counts, acc.hist.sum_sq);
  };
  auto merge = [](Partial& into, const Partial& from) {
    merge_hist(into.hist, from.hist);
    into.particles += from.particles;
    into.particles_sq += from.particles_sq;
  };
  const Partial total = reduce_trials(config, identity, per_trial, merge);

  const double t = static_cast<double>(config.trials);
  const double h = grid.spacing();
  std::vector<double> values(grid.size());
  std::vector<double> se(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = static_cast<double>(total.hist.counts[i]) / (t * h);
    se[i] = sample_se(static_cast<double>(total.hist.counts[i]),
                      static_cast<double>(total.hist.sum_sq[i]), config.trials) / h;
  }
  ConcentrationEstimate est{numerics::Field1D(grid, std::move(values), config.t_final), std::move(se)};
  est.mean_count = static_cast<double>(total.particles) / t;
  est.mean_count_standard_error = sample_se(static_cast<double>(total.particles),
                                            static_cast<double>(total.particles_sq), config.trials);
  est.out_of_range = total.hist.out_of_range;
  return est;
}

double BallOccupancy::probability(std::size_t n, std::size_t k) const {
  const auto it = counts.find(n);
  if (it == counts.end() || k > n) return 0.0;
  return static_cast<double>(it->second[k]) / static_cast<double>(trials);
}

std::vector<double> BallOccupancy::distribution(std::size_t n) const {
  std::vector<double> p(n + 1);
  for (std::size_t k = 0; k <= n; ++k) p[k] = probability(n, k);
  return p;
}

double BallOccupancy::mean_inside() const {
  return static_cast<double>(inside_sum) / static_cast<double>(trials);
}

double BallOccupancy::mean_inside_standard_error() const {
  return sample_se(static_cast<double>(inside_sum), static_cast<double>(inside_sum_sq), trials);
}

BallOccupancy estimate_ball_occupancy(double x, double epsilon, const SimConfig& config) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("estimate_ball_occupancy: epsilon must be > 0");
  BallOccupancy identity;
  identity.x = x;
  identity.epsilon = epsilon;
  auto per_trial = [&](BallOccupancy& acc, std::uint64_t, const ParticleSystem& ps) {
    const std::size_t n = ps.count();
    std::size_t k = 0;
    for (double xk : ps.positions) k += std::abs(xk - x) < epsilon ? 1 : 0;
    auto& row = acc.counts[n];
    if (row.empty()) row.assign(n + 1, 0);
    ++row[k];
    ++acc.trials;
    acc.inside_sum += k;
    acc.inside_sum_sq += static_cast<std::uint64_t>(k) * k;
  };
  auto merge = [](BallOccupancy& into, const BallOccupancy& from) {
    for (const auto& [n, row] : from.counts) {
      auto& dst = into.counts[n];
      if (dst.empty()) dst.assign(n + 1, 0);
      for (std::size_t k = 0; k <= n; ++k) dst[k] += row[k];
    }
    into.trials += from.trials;
    into.inside_sum += from.inside_sum;
    into.inside_sum_sq += from.inside_sum_sq;
  };
  return reduce_trials(config, identity, per_trial, merge);
}

std::vector<double> estimate_ball_occupancy(double x, double epsilon, std::size_t n,
                                            const SimConfig& config) {
  return estimate_ball_occupancy(x, epsilon, config).distribution(n);
}

}  // namespace bbm::sim
