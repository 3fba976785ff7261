#include "bbm/numerics/serialize.hpp"

#include <vector>

#include "bbm/errors.hpp"

namespace bbm::numerics {

nlohmann::json to_json(const Grid1D& g) {
  return {{"lo", g.lo()}, {"hi", g.hi()}, {"n_points", g.size()}};
}

Grid1D grid_from_json(const nlohmann::json& j) {
  return Grid1D(j.at("lo").get<double>(), j.at("hi").get<double>(),
                j.at("n_points").get<std::size_t>());
}

nlohmann::json to_json(const SampledKernel& k) {
  nlohmann::json j;
  j["order"] = k.order();
  j["grid"] = to_json(k.grid());
  j["values"] = std::vector<double>(k.values().begin(), k.values().end());
  return j;
}

SampledKernel kernel_from_json(const nlohmann::json& j) {
  const int order = j.at("order").get<int>();
  if (order < 0) throw ShapeError("kernel_from_json: negative order");
  return SampledKernel(order, grid_from_json(j.at("grid")), j.at("values").get<std::vector<double>>());
}

}  // namespace bbm::numerics
