#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bbm/sim/config.hpp"

namespace bbm::sim {

// Live particle positions X_1(t), ..., X_{n(t)}(t).
struct ParticleSystem {
  double time = 0.0;
  std::vector<double> positions;

  std::size_t count() const noexcept { return positions.size(); }
  bool operator==(const ParticleSystem&) const = default;
};

// Exact event-driven simulation of one trial up to config.t_final.
//
// Every particle carries an Exp(branch_rate) clock. Between consecutive events
// all particles move by independent N(0, dt) increments; at an event the
// particle is replaced by two copies at its position with fresh clocks.
// Deterministic in (config.seed, trial_index). Throws ResourceError when the
// population exceeds config.max_particles and std::out_of_range when
// trial_index >= config.trials.
ParticleSystem simulate(const SimConfig& config, std::uint64_t trial_index);

// One trajectory observed at the given strictly increasing times in
// (0, config.t_final]. Uses the same stream as simulate() but draws extra
// increments at the observation times, so it is a different (equal in law)
// sample path than simulate() for the same trial.
std::vector<ParticleSystem> simulate_path(const SimConfig& config, std::uint64_t trial_index,
                                          std::span<const double> times);

}  // namespace bbm::sim
