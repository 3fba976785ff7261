#pragma once

#include <cstddef>
#include <cstdint>

namespace bbm::sim {

struct SimConfig {
  double t_final = 1.0;
  // Exponential clock rate per particle; every acceptance target assumes 1.
  double branch_rate = 1.0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 20240917;
  std::size_t max_particles = 1000000;
  // Worker threads for estimators; 0 means hardware concurrency. Results do
  // not depend on this value.
  unsigned threads = 0;

  // Throws ConfigError on t_final <= 0, trials < 1, max_particles < 1 or a
  // non-positive branch rate.
  void validate() const;
};

}  // namespace bbm::sim
