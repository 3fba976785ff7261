#pragma once

#include <cstdint>
#include <random>

namespace bbm::sim {

// Random stream for one trial. The engine state is a pure function of
// (seed, trial), so trials can be replayed individually and in any order.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);

  double exponential(double rate);
  double normal();

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace bbm::sim
