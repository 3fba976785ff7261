#include "bbm/sim/rng.hpp"

#include <cstdint>

namespace bbm::sim {
namespace {

std::mt19937_64 keyed_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                    0x62626d31u};
  return std::mt19937_64(seq);
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) : engine_(keyed_engine(seed, trial)) {}

double TrialRng::exponential(double rate) {
  return std::exponential_distribution<double>(rate)(engine_);
}

double TrialRng::normal() { return normal_(engine_); }

}  // namespace bbm::sim
