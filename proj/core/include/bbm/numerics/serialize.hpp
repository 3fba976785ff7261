#pragma once

#include <nlohmann/json.hpp>

#include "bbm/numerics/grid.hpp"
#include "bbm/numerics/sampled_kernel.hpp"

namespace bbm::numerics {

// {"order", "grid": {"lo", "hi", "n_points"}, "values": [row-major]}.
// Doubles are written in shortest round-trip form, so to_json/from_json is exact.
nlohmann::json to_json(const SampledKernel& k);
SampledKernel kernel_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Grid1D& g);
Grid1D grid_from_json(const nlohmann::json& j);

}  // namespace bbm::numerics
