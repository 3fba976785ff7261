#include "bbmlab/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>

#include "bbm/errors.hpp"

namespace bbm::app {
namespace {

using nlohmann::json;

template <class S>
struct Field {
  const char* key;
  std::function<void(S&, const json&)> read;
  std::function<json(const S&)> write;
};

#define BBMLAB_FIELD(S, name)                                       \
  Field<S> {                                                        \
    #name, [](S& s, const json& j) { j.get_to(s.name); },           \
        [](const S& s) { return json(s.name); }                     \
  }

template <class S>
void read_section(const json& j, const char* section, S& s, const std::vector<Field<S>>& fields) {
  if (!j.is_object()) throw ConfigError(std::string("section '") + section + "' must be an object");
  for (const auto& [key, value] : j.items()) {
    const auto it = std::find_if(fields.begin(), fields.end(), [&](const Field<S>& f) { return key == f.key; });
    if (it == fields.end()) throw ConfigError(std::string("unknown key '") + section + "." + key + "'");
    try {
      it->read(s, value);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bad value for '") + section + "." + key + "': " + e.what());
    }
  }
}

template <class S>
json write_section(const S& s, const std::vector<Field<S>>& fields) {
  json j = json::object();
  for (const auto& f : fields) j[f.key] = f.write(s);
  return j;
}

const std::vector<Field<RunSection>>& run_fields() {
  static const std::vector<Field<RunSection>> f{
      BBMLAB_FIELD(RunSection, t),       BBMLAB_FIELD(RunSection, seed),
      BBMLAB_FIELD(RunSection, trials),  BBMLAB_FIELD(RunSection, threads),
      BBMLAB_FIELD(RunSection, out),     BBMLAB_FIELD(RunSection, max_particles)};
  return f;
}

const std::vector<Field<GridSection>>& grid_fields() {
  static const std::vector<Field<GridSection>> f{BBMLAB_FIELD(GridSection, lo), BBMLAB_FIELD(GridSection, hi),
                                                 BBMLAB_FIELD(GridSection, n)};
  return f;
}

const std::vector<Field<SimulateSection>>& simulate_fields() {
  static const std::vector<Field<SimulateSection>> f{
      BBMLAB_FIELD(SimulateSection, mckean_amplitude), BBMLAB_FIELD(SimulateSection, mckean_x),
      BBMLAB_FIELD(SimulateSection, ball_x), BBMLAB_FIELD(SimulateSection, ball_epsilon),
      BBMLAB_FIELD(SimulateSection, marginal_order)};
  return f;
}

const std::vector<Field<HierarchySection>>& hierarchy_fields() {
  static const std::vector<Field<HierarchySection>> f{
      BBMLAB_FIELD(HierarchySection, order),           BBMLAB_FIELD(HierarchySection, time_substeps),
      BBMLAB_FIELD(HierarchySection, z_spacing),       BBMLAB_FIELD(HierarchySection, mass_terms),
      BBMLAB_FIELD(HierarchySection, mass_substeps),   BBMLAB_FIELD(HierarchySection, residual_spacings),
      BBMLAB_FIELD(HierarchySection, residual_dt_per_h), BBMLAB_FIELD(HierarchySection, residual_half_width)};
  return f;
}

const std::vector<Field<ChaosSection>>& chaos_fields() {
  static const std::vector<Field<ChaosSection>> f{
      BBMLAB_FIELD(ChaosSection, seed), BBMLAB_FIELD(ChaosSection, random_cases),
      BBMLAB_FIELD(ChaosSection, exact_tolerance), BBMLAB_FIELD(ChaosSection, min_slope),
      BBMLAB_FIELD(ChaosSection, vacuum_tolerance)};
  return f;
}

const std::vector<Field<PdeSection>>& pde_fields() {
  static const std::vector<Field<PdeSection>> f{
      BBMLAB_FIELD(PdeSection, lo), BBMLAB_FIELD(PdeSection, hi), BBMLAB_FIELD(PdeSection, spacing),
      BBMLAB_FIELD(PdeSection, dt), BBMLAB_FIELD(PdeSection, f0_amplitude),
      BBMLAB_FIELD(PdeSection, mollification)};
  return f;
}

const std::vector<Field<ValidateSection>>& validate_fields() {
  using V = ValidateSection;
  static const std::vector<Field<V>> f{
      BBMLAB_FIELD(V, count_times),           BBMLAB_FIELD(V, count_cells),
      BBMLAB_FIELD(V, chi2_level),            BBMLAB_FIELD(V, mass_tolerance),
      BBMLAB_FIELD(V, normalization_tolerance), BBMLAB_FIELD(V, invariance_tolerance_n1),
      BBMLAB_FIELD(V, invariance_tolerance_n2), BBMLAB_FIELD(V, x_ref_alt),
      BBMLAB_FIELD(V, rho1_l1),               BBMLAB_FIELD(V, rho2_relative),
      BBMLAB_FIELD(V, rho2_diagonal),         BBMLAB_FIELD(V, semianalytic_relative),
      BBMLAB_FIELD(V, semianalytic_points),   BBMLAB_FIELD(V, residual_n1_tolerance),
      BBMLAB_FIELD(V, residual_n1_spacing),   BBMLAB_FIELD(V, residual_n1_dt),
      BBMLAB_FIELD(V, min_slope),             BBMLAB_FIELD(V, mckean_times),
      BBMLAB_FIELD(V, mckean_trials),         BBMLAB_FIELD(V, mckean_floor),
      BBMLAB_FIELD(V, concentration_l1),      BBMLAB_FIELD(V, malliavin_t),
      BBMLAB_FIELD(V, malliavin_tolerance),   BBMLAB_FIELD(V, malliavin_spacing),
      BBMLAB_FIELD(V, malliavin_half_width),  BBMLAB_FIELD(V, closed_form_relative),
      BBMLAB_FIELD(V, reproducibility_check)};
  return f;
}

#undef BBMLAB_FIELD

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

void ExperimentConfig::check() const {
  require(positive(run.t), "run.t must be > 0");
  require(run.trials >= 1, "run.trials must be >= 1");
  require(run.max_particles >= 1, "run.max_particles must be >= 1");
  require(std::isfinite(grid.lo) && std::isfinite(grid.hi) && grid.lo < grid.hi, "grid.lo must be < grid.hi");
  require(grid.n >= 5, "grid.n must be >= 5");
  require(simulate.mckean_amplitude >= 0.0 && simulate.mckean_amplitude <= 1.0,
          "simulate.mckean_amplitude must lie in [0, 1]");
  require(positive(simulate.ball_epsilon), "simulate.ball_epsilon must be > 0");
  require(simulate.marginal_order >= 1, "simulate.marginal_order must be >= 1");
  require(hierarchy.order >= 1 && hierarchy.order <= numerics::kDefaultMaxOrder,
          "hierarchy.order must lie in [1, 4]");
  require(hierarchy.mass_terms >= 1, "hierarchy.mass_terms must be >= 1");
  require(hierarchy.mass_substeps >= 1, "hierarchy.mass_substeps must be >= 1");
  require(hierarchy.residual_spacings.size() >= 2, "hierarchy.residual_spacings needs two or more entries");
  for (double h : hierarchy.residual_spacings) require(positive(h), "hierarchy.residual_spacings must be > 0");
  require(positive(hierarchy.residual_dt_per_h), "hierarchy.residual_dt_per_h must be > 0");
  require(positive(hierarchy.residual_half_width), "hierarchy.residual_half_width must be > 0");
  quadrature().validate();
  require(chaos.random_cases >= 1, "chaos.random_cases must be >= 1");
  require(std::isfinite(pde.lo) && pde.lo < pde.hi, "pde.lo must be < pde.hi");
  require(positive(pde.spacing), "pde.spacing must be > 0");
  require(pde.dt >= 0.0, "pde.dt must be >= 0");
  require(pde.f0_amplitude >= 0.0 && pde.f0_amplitude <= 1.0, "pde.f0_amplitude must lie in [0, 1]");
  require(pde.mollification >= 2.0 * pde.spacing, "pde.mollification must be >= 2 * pde.spacing");
  require(!validate.count_times.empty(), "validate.count_times must not be empty");
  for (double t : validate.count_times) require(positive(t), "validate.count_times must be > 0");
  for (double t : validate.mckean_times) require(positive(t), "validate.mckean_times must be > 0");
  require(validate.count_cells >= 2, "validate.count_cells must be >= 2");
  require(validate.mckean_trials >= 1, "validate.mckean_trials must be >= 1");
  require(positive(validate.malliavin_t), "validate.malliavin_t must be > 0");
  require(positive(validate.malliavin_spacing), "validate.malliavin_spacing must be > 0");
  require(validate.semianalytic_points >= 1, "validate.semianalytic_points must be >= 1");
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"run", write_section(run, run_fields())},
          {"grid", write_section(grid, grid_fields())},
          {"simulate", write_section(simulate, simulate_fields())},
          {"hierarchy", write_section(hierarchy, hierarchy_fields())},
          {"chaos", write_section(chaos, chaos_fields())},
          {"pde", write_section(pde, pde_fields())},
          {"validate", write_section(validate, validate_fields())}};
}

numerics::Grid1D ExperimentConfig::spatial_grid() const { return {grid.lo, grid.hi, grid.n}; }

sim::SimConfig ExperimentConfig::sim_config() const {
  sim::SimConfig c;
  c.t_final = run.t;
  c.trials = run.trials;
  c.seed = run.seed;
  c.max_particles = run.max_particles;
  c.threads = run.threads;
  return c;
}

hierarchy::QuadratureConfig ExperimentConfig::quadrature() const {
  hierarchy::QuadratureConfig q;
  q.time_substeps = hierarchy.time_substeps;
  q.z_spacing = hierarchy.z_spacing;
  q.threads = run.threads;
  return q;
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "run") {
      read_section(value, "run", c.run, run_fields());
    } else if (key == "grid") {
      read_section(value, "grid", c.grid, grid_fields());
    } else if (key == "simulate") {
      read_section(value, "simulate", c.simulate, simulate_fields());
    } else if (key == "hierarchy") {
      read_section(value, "hierarchy", c.hierarchy, hierarchy_fields());
    } else if (key == "chaos") {
      read_section(value, "chaos", c.chaos, chaos_fields());
    } else if (key == "pde") {
      read_section(value, "pde", c.pde, pde_fields());
    } else if (key == "validate") {
      read_section(value, "validate", c.validate, validate_fields());
    } else {
      throw ConfigError("unknown section '" + key + "'");
    }
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

ExperimentConfig resolve_config(const std::optional<std::filesystem::path>& file, const Overrides& o) {
  ExperimentConfig c = file ? load_config(*file) : ExperimentConfig{};
  if (o.t) c.run.t = *o.t;
  if (o.trials) c.run.trials = *o.trials;
  if (o.seed) c.run.seed = *o.seed;
  if (o.grid_lo) c.grid.lo = *o.grid_lo;
  if (o.grid_hi) c.grid.hi = *o.grid_hi;
  if (o.grid_n) c.grid.n = *o.grid_n;
  if (o.order) c.hierarchy.order = *o.order;
  if (o.out) c.run.out = *o.out;
  if (o.threads) c.run.threads = *o.threads;
  if (c.run.out.empty()) {
    const char* env = std::getenv("BBMLAB_OUT");
    c.run.out = env != nullptr && *env != '\0' ? env : "bbmlab_out";
  }
  c.check();
  return c;
}

}  // namespace bbm::app
