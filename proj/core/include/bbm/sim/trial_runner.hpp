#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

#include "bbm/sim/config.hpp"
#include "bbm/sim/simulate.hpp"

namespace bbm::sim {

inline constexpr std::uint64_t kTrialBlock = 1024;

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs every trial of `config` and folds them into a Partial.
//
// Trials are grouped in fixed blocks of kTrialBlock. Each block is folded
// sequentially from a copy of `identity`, and block results are merged in
// block order, so the outcome is the same for every thread count.
// The first exception (lowest block) is rethrown.
template <class Partial, class PerTrial, class Merge>
Partial reduce_trials(const SimConfig& config, const Partial& identity, PerTrial per_trial,
                      Merge merge) {
  config.validate();
  const std::uint64_t n_blocks = (config.trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<std::optional<Partial>> partials(n_blocks);
  std::vector<std::exception_ptr> errors(n_blocks);
  std::atomic<std::uint64_t> next{0};

  auto worker = [&] {
    for (std::uint64_t b = next++; b < n_blocks; b = next++) {
      try {
        Partial acc = identity;
        const std::uint64_t end = std::min(config.trials, (b + 1) * kTrialBlock);
        for (std::uint64_t trial = b * kTrialBlock; trial < end; ++trial) {
          per_trial(acc, trial, simulate(config, trial));
        }
        partials[b].emplace(std::move(acc));
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
  };

  const unsigned n_threads =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(config.threads), n_blocks));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }

  Partial total = identity;
  for (std::uint64_t b = 0; b < n_blocks; ++b) {
    if (errors[b]) std::rethrow_exception(errors[b]);
    merge(total, *partials[b]);
  }
  return total;
}

}  // namespace bbm::sim
