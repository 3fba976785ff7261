#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "bbmlab/config.hpp"

namespace bbm::app {

inline constexpr std::array<std::string_view, 5> kSubcommands{"simulate", "hierarchy", "chaos-check", "pde",
                                                              "validate"};

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitRuntime = 4;

// {"schema_version", "error": {"type", "message"[, "trial"]}}
nlohmann::json error_json(std::string_view type, std::string_view message,
                          std::optional<std::uint64_t> trial = std::nullopt);

// Runs a subcommand into config.run.out with a manifest. A summary (or an
// error document) is printed as JSON on `out`; progress goes to `log`.
int run_subcommand(std::string_view subcommand, const ExperimentConfig& config, std::ostream& out,
                   std::ostream& log);

}  // namespace bbm::app
