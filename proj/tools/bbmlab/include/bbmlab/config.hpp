#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bbm/hierarchy/kernels.hpp"
#include "bbm/numerics/grid.hpp"
#include "bbm/sim/config.hpp"

namespace bbm::app {

struct RunSection {
  double t = 1.0;
  std::uint64_t seed = 20240917;
  std::uint64_t trials = 100000;
  unsigned threads = 0;
  std::string out;
  std::size_t max_particles = 1000000;
};

struct GridSection {
  double lo = -6.0;
  double hi = 6.0;
  std::size_t n = 121;
};

struct SimulateSection {
  double mckean_amplitude = 0.9;
  std::vector<double> mckean_x{-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0};
  double ball_x = 0.0;
  double ball_epsilon = 0.1;
  int marginal_order = 3;
};

struct HierarchySection {
  int order = 2;
  std::size_t time_substeps = 256;
  double z_spacing = 0.02;
  std::size_t mass_terms = 40;
  std::size_t mass_substeps = 10000;
  std::vector<double> residual_spacings{0.2, 0.1, 0.05};
  double residual_dt_per_h = 0.05;
  double residual_half_width = 6.0;
};

struct ChaosSection {
  std::uint64_t seed = 17;
  int random_cases = 3;
  double exact_tolerance = 1e-10;
  double min_slope = 1.8;
  double vacuum_tolerance = 1e-6;
};

struct PdeSection {
  double lo = -10.0;
  double hi = 10.0;
  double spacing = 0.02;
  double dt = 0.0;  // 0 selects the solver default
  double f0_amplitude = 0.9;
  double mollification = 0.1;
};

struct ValidateSection {
  std::vector<double> count_times{0.5, 1.0, 2.0};
  std::size_t count_cells = 10;
  double chi2_level = 1e-3;
  double mass_tolerance = 1e-6;
  double normalization_tolerance = 1e-6;
  double invariance_tolerance_n1 = 1e-6;
  double invariance_tolerance_n2 = 1e-3;
  double x_ref_alt = 1.7;
  double rho1_l1 = 0.02;
  double rho2_relative = 0.05;
  std::vector<double> rho2_diagonal{-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0};
  double semianalytic_relative = 1e-3;
  int semianalytic_points = 20;
  double residual_n1_tolerance = 1e-4;
  double residual_n1_spacing = 0.02;
  double residual_n1_dt = 1e-3;
  double min_slope = 1.8;
  std::vector<double> mckean_times{0.5, 1.0};
  std::uint64_t mckean_trials = 200000;
  double mckean_floor = 0.01;
  double concentration_l1 = 0.05;
  double malliavin_t = 0.5;
  double malliavin_tolerance = 1e-8;
  double malliavin_spacing = 0.05;
  double malliavin_half_width = 8.0;
  double closed_form_relative = 0.02;
  bool reproducibility_check = true;
};

// Sections of the JSON config file; every key is optional and unknown keys
// are rejected.
struct ExperimentConfig {
  RunSection run;
  GridSection grid;
  SimulateSection simulate;
  HierarchySection hierarchy;
  ChaosSection chaos;
  PdeSection pde;
  ValidateSection validate;

  // ConfigError for values outside the module preconditions.
  void check() const;

  nlohmann::json to_json() const;

  numerics::Grid1D spatial_grid() const;
  sim::SimConfig sim_config() const;
  hierarchy::QuadratureConfig quadrature() const;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

// Command-line values that override the file.
struct Overrides {
  std::optional<double> t;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> grid_lo;
  std::optional<double> grid_hi;
  std::optional<std::size_t> grid_n;
  std::optional<int> order;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
};

// File (if any), then flags, then BBMLAB_OUT / "bbmlab_out" for an unset
// output directory. The result has been check()ed.
ExperimentConfig resolve_config(const std::optional<std::filesystem::path>& file,
                                const Overrides& overrides);

}  // namespace bbm::app
