#include "bbm/sim/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bbm/errors.hpp"
#include "bbm/sim/rng.hpp"

namespace bbm::sim {
namespace {

struct Particle {
  double position;
  double branch_time;
};

std::vector<ParticleSystem> run(const SimConfig& config, std::uint64_t trial,
                                std::span<const double> times) {
  if (trial >= config.trials) {
    throw std::out_of_range("simulate: trial index " + std::to_string(trial) + " >= trials");
  }
  TrialRng rng(config.seed, trial);
  std::vector<Particle> particles{{0.0, rng.exponential(config.branch_rate)}};
  std::vector<ParticleSystem> snapshots;
  snapshots.reserve(times.size());

  double now = 0.0;
  auto advance_to = [&](double target) {
    const double dt = target - now;
    if (dt > 0.0) {
      const double sd = std::sqrt(dt);
      for (auto& p : particles) p.position += sd * rng.normal();
    }
    now = target;
  };

  for (const double observe_at : times) {
    while (true) {
      const auto next = std::min_element(particles.begin(), particles.end(),
                                         [](const Particle& a, const Particle& b) {
                                           return a.branch_time < b.branch_time;
                                         });
      if (next->branch_time >= observe_at) break;
      const std::size_t parent = static_cast<std::size_t>(next - particles.begin());
      advance_to(next->branch_time);
      if (particles.size() + 1 > config.max_particles) {
        throw ResourceError("simulate: trial " + std::to_string(trial) + " exceeded " +
                                std::to_string(config.max_particles) + " particles at t=" +
                                std::to_string(now),
                            trial);
      }
      const double where = particles[parent].position;
      particles[parent].branch_time = now + rng.exponential(config.branch_rate);
      particles.push_back({where, now + rng.exponential(config.branch_rate)});
    }
    advance_to(observe_at);
    ParticleSystem snap;
    snap.time = now;
    snap.positions.reserve(particles.size());
    for (const auto& p : particles) snap.positions.push_back(p.position);
    snapshots.push_back(std::move(snap));
  }
  return snapshots;
}

}  // namespace

void SimConfig::validate() const {
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final must be > 0");
  if (!(branch_rate > 0.0) || !std::isfinite(branch_rate)) throw ConfigError("branch_rate must be > 0");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (max_particles < 1) throw ConfigError("max_particles must be >= 1");
}

ParticleSystem simulate(const SimConfig& config, std::uint64_t trial_index) {
  config.validate();
  const double t[] = {config.t_final};
  return std::move(run(config, trial_index, t).front());
}

std::vector<ParticleSystem> simulate_path(const SimConfig& config, std::uint64_t trial_index,
                                          std::span<const double> times) {
  config.validate();
  double prev = 0.0;
  for (double t : times) {
    if (!(t > prev) || t > config.t_final) {
      throw std::invalid_argument("simulate_path: times must increase within (0, t_final]");
    }
    prev = t;
  }
  return run(config, trial_index, times);
}

}  // namespace bbm::sim
