#include "bbmlab/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <stdexcept>

#include <fmt/format.h>

#include "bbm/chaos/identities.hpp"
#include "bbm/errors.hpp"
#include "bbm/hierarchy/kernels.hpp"
#include "bbm/hierarchy/mass.hpp"
#include "bbm/hierarchy/residuals.hpp"
#include "bbm/numerics/heat_kernel.hpp"
#include "bbm/numerics/serialize.hpp"
#include "bbm/pde/fkpp.hpp"
#include "bbm/pde/linear_rd.hpp"
#include "bbm/sim/estimators.hpp"
#include "bbm/sim/trial_runner.hpp"
#include "bbmlab/csv.hpp"
#include "bbmlab/manifest.hpp"
#include "bbmlab/validation.hpp"

namespace bbm::app {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using numerics::Grid1D;
using numerics::SampledKernel;

class Session {
 public:
  Session(std::string_view subcommand, const ExperimentConfig& cfg, RunManifest& manifest)
      : subcommand_(subcommand), cfg_(cfg), manifest_(manifest) {}

  CsvWriter csv(const std::string& file, const std::vector<std::string>& columns, MetaLines extra = {}) {
    MetaLines meta{{"subcommand", subcommand()},
                   {"version", version_string()},
                   {"seed", std::to_string(cfg_.run.seed)},
                   {"t", format_number(cfg_.run.t)},
                   {"trials", std::to_string(cfg_.run.trials)}};
    meta.insert(meta.end(), extra.begin(), extra.end());
    manifest_.add_output(file);
    return CsvWriter(manifest_.directory() / file, meta, columns);
  }

  void json_file(const std::string& file, const json& j) {
    std::ofstream out(manifest_.directory() / file);
    if (!out) throw std::runtime_error("cannot write " + file);
    out << j.dump(2) << '\n';
    manifest_.add_output(file);
  }

  const std::string& subcommand() const { return subcommand_; }
  const ExperimentConfig& cfg() const { return cfg_; }

 private:
  std::string subcommand_;
  const ExperimentConfig& cfg_;
  RunManifest& manifest_;
};

Grid1D pde_grid(const PdeSection& p) {
  const auto cells = static_cast<std::size_t>(std::max(1.0, std::round((p.hi - p.lo) / p.spacing)));
  return {p.lo, p.hi, cells + 1};
}

// amplitude * exp(-x^2) on the pde grid.
numerics::Field1D gaussian_datum(const ExperimentConfig& cfg, double amp) {
  return numerics::Field1D::from_function(pde_grid(cfg.pde), [amp](double x) { return amp * std::exp(-x * x); });
}

void write_histogram(Session& s, const std::string& file, const sim::Histogram& h) {
  const SampledKernel d = h.density();
  const SampledKernel se = h.standard_error();
  const MetaLines extra{{"order", std::to_string(h.order)},
                        {"matched_trials", std::to_string(h.matched_trials)},
                        {"out_of_range", std::to_string(h.out_of_range)}};
  if (h.order == 2) {
    CsvWriter out = s.csv(file, {"y1", "y2", "density", "standard_error"}, extra);
    const Grid1D& g = h.grid;
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) {
        const std::size_t idx[2] = {i, j};
        out.row({g.point(i), g.point(j), d.at(idx), se.at(idx)});
      }
  } else {
    CsvWriter out = s.csv(file, {"y", "density", "standard_error"}, extra);
    for (std::size_t i = 0; i < h.grid.size(); ++i) out.row({h.grid.point(i), d[i], se[i]});
  }
}

json simulate(Session& s, std::ostream& log) {
  const ExperimentConfig& cfg = s.cfg();
  const sim::SimConfig sc = cfg.sim_config();
  const Grid1D grid = cfg.spatial_grid();

  log << "count law\n";
  const sim::CountPmf pmf = sim::estimate_count_pmf(sc);
  {
    CsvWriter out = s.csv("counts.csv", {"n", "count", "probability", "standard_error", "geometric"});
    for (const auto& [n, c] : pmf.counts)
      out.row({static_cast<double>(n), static_cast<double>(c), pmf.probability(n), pmf.standard_error(n),
               hierarchy::geometric_mass(n, cfg.run.t)});
  }
  log << "densities\n";
  write_histogram(s, "density_n1.csv", sim::estimate_density(1, sc, grid));
  write_histogram(s, "density_n2.csv", sim::estimate_density(2, sc, grid));
  const int k = cfg.simulate.marginal_order;
  write_histogram(s, fmt::format("marginal_n{}.csv", k), sim::estimate_marginal_density(k, sc, grid));

  log << "concentration\n";
  const sim::ConcentrationEstimate conc = sim::estimate_concentration(sc, grid);
  {
    CsvWriter out = s.csv("concentration.csv", {"x", "concentration", "standard_error", "closed_form"});
    for (std::size_t i = 0; i < grid.size(); ++i)
      out.row({grid.point(i), conc.field.values[i], conc.standard_error[i],
               pde::concentration_closed_form(cfg.run.t, grid.point(i))});
  }
  log << "mckean\n";
  {
    const auto pts = sim::estimate_mckean(gaussian_datum(cfg, cfg.simulate.mckean_amplitude), cfg.simulate.mckean_x, sc);
    CsvWriter out = s.csv("mckean.csv", {"x", "u", "standard_error"},
                          {{"f", fmt::format("{}*exp(-x^2)", format_number(cfg.simulate.mckean_amplitude))}});
    for (const auto& p : pts) out.row({p.x, p.estimate, p.standard_error});
  }
  log << "ball occupancy\n";
  const sim::BallOccupancy ball = sim::estimate_ball_occupancy(cfg.simulate.ball_x, cfg.simulate.ball_epsilon, sc);
  {
    CsvWriter out = s.csv("ball.csv", {"n", "k", "probability"},
                          {{"x", format_number(ball.x)}, {"epsilon", format_number(ball.epsilon)}});
    for (const auto& [n, counts] : ball.counts)
      for (std::size_t kk = 0; kk < counts.size(); ++kk)
        out.row({static_cast<double>(n), static_cast<double>(kk), ball.probability(n, kk)});
  }
  return {{"mean_count", pmf.mean()},
          {"mean_count_standard_error", pmf.mean_standard_error()},
          {"ball_mean_inside", ball.mean_inside()},
          {"ball_mean_inside_standard_error", ball.mean_inside_standard_error()}};
}

json hierarchy_cmd(Session& s, std::ostream& log) {
  const ExperimentConfig& cfg = s.cfg();
  const HierarchySection& h = cfg.hierarchy;
  const double t = cfg.run.t;
  const auto q = cfg.quadrature();
  const Grid1D grid = cfg.spatial_grid();
  const int n = h.order;

  log << "mass recursion\n";
  const auto m = hierarchy::mass_recursion(h.mass_terms, t, h.mass_substeps);
  {
    CsvWriter out = s.csv("mass.csv", {"n", "recursion", "geometric"});
    for (std::size_t k = 1; k <= m.size(); ++k) out.row({static_cast<double>(k), m(k), hierarchy::geometric_mass(k, t)});
  }

  log << fmt::format("g_{} slice\n", n);
  {
    const std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    CsvWriter out = s.csv(fmt::format("g{}_slice.csv", n), {"x", "g"},
                          {{"order", std::to_string(n)}, {"y", "0"}});
    for (double x : grid.points()) out.row({x, hierarchy::eval_gn(n, t, x, y, q)});
  }
  if (n <= 2) {
    log << fmt::format("rho_{} on the grid\n", n);
    const SampledKernel rho = hierarchy::rho_kernel(n, t, grid, q);
    if (n == 1) {
      CsvWriter out = s.csv("rho1.csv", {"y", "rho"});
      for (std::size_t i = 0; i < grid.size(); ++i) out.row({grid.point(i), rho[i]});
    } else {
      CsvWriter out = s.csv("rho2.csv", {"y1", "y2", "rho"});
      for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid.size(); ++j) {
          const std::size_t idx[2] = {i, j};
          out.row({grid.point(i), grid.point(j), rho.at(idx)});
        }
    }
  }

  json summary = json::array();
  for (int k = 1; k <= std::min(n, 2); ++k) {
    log << fmt::format("CDME residual n={}\n", k);
    const auto study = hierarchy::cdme_refinement(k, t, h.residual_half_width, h.residual_spacings,
                                                  h.residual_dt_per_h, q);
    const json report{{"schema_version", kSchemaVersion},
                      {"n", k},
                      {"t", t},
                      {"grid", numerics::to_json(Grid1D::symmetric(h.residual_half_width, h.residual_spacings.back()))},
                      {"max_residual", study.errors.back()},
                      {"convergence_slope", study.slope},
                      {"spacings", study.spacings},
                      {"errors", study.errors}};
    s.json_file(fmt::format("residual_n{}.json", k), report);
    summary.push_back(report);
  }
  return {{"mass_total", m.total()}, {"residuals", summary}};
}

json chaos_check(Session& s, bool& all_pass) {
  const ExperimentConfig& cfg = s.cfg();
  chaos::IdentitySuiteConfig sc;
  sc.seed = cfg.chaos.seed;
  sc.random_cases = cfg.chaos.random_cases;
  sc.exact_tolerance = cfg.chaos.exact_tolerance;
  sc.min_slope = cfg.chaos.min_slope;
  sc.vacuum_tolerance = cfg.chaos.vacuum_tolerance;
  json list = json::array();
  all_pass = true;
  for (const chaos::IdentityCheck& c : chaos::run_identity_suite(sc)) {
    all_pass = all_pass && c.pass;
    json entry{{"identity_name", c.name},
               {"kind", c.kind},
               {"max_error", c.max_error},
               {"tolerance", c.tolerance},
               {"pass", c.pass}};
    if (c.kind == "fd" && !c.spacings.empty()) {
      entry["slope"] = c.slope;
      entry["spacings"] = c.spacings;
      entry["errors"] = c.errors;
    }
    list.push_back(entry);
  }
  const json report{{"schema_version", kSchemaVersion}, {"pass", all_pass}, {"identities", list}};
  s.json_file("chaos_check.json", report);
  return report;
}

json pde_cmd(Session& s, std::ostream& log) {
  const ExperimentConfig& cfg = s.cfg();
  const double t = cfg.run.t;
  const Grid1D g = pde_grid(cfg.pde);

  log << "FKPP\n";
  const numerics::Field1D u = pde::solve_fkpp(gaussian_datum(cfg, cfg.pde.f0_amplitude), t, cfg.pde.dt);
  {
    CsvWriter out = s.csv("fkpp.csv", {"x", "value"},
                          {{"f0", fmt::format("{}*exp(-x^2)", format_number(cfg.pde.f0_amplitude))}});
    for (std::size_t i = 0; i < g.size(); ++i) out.row({g.point(i), u.values[i]});
  }
  log << "linear reaction-diffusion\n";
  const double eps = cfg.pde.mollification;
  const numerics::Field1D c = pde::solve_linear_rd(g, t, cfg.pde.dt, eps);
  const numerics::Field1D exact = numerics::Field1D::from_function(
      g, [&](double x) { return std::exp(t) * numerics::heat_kernel(t + eps * eps, x); }, t);
  {
    CsvWriter out = s.csv("linear_rd.csv", {"x", "value", "exact"}, {{"mollification", format_number(eps)}});
    for (std::size_t i = 0; i < g.size(); ++i) out.row({g.point(i), c.values[i], exact.values[i]});
  }
  {
    const numerics::Field1D cf = pde::concentration_closed_form(t, g);
    CsvWriter out = s.csv("closed_form.csv", {"x", "value"});
    for (std::size_t i = 0; i < g.size(); ++i) out.row({g.point(i), cf.values[i]});
  }
  const pde::FieldComparison cmp = pde::compare_fields(c, exact);
  const double dt = cfg.pde.dt > 0.0 ? cfg.pde.dt : pde::default_dt(g);
  const json report{{"schema_version", kSchemaVersion},
                    {"t", t},
                    {"grid", numerics::to_json(g)},
                    {"linear_rd_vs_exact", {{"l1", cmp.l1}, {"linf", cmp.linf}, {"relative_l2", cmp.relative_l2}}},
                    {"closed_form_residual", pde::closed_form_residual(t, g, dt)},
                    {"fkpp_range", {*std::min_element(u.values.begin(), u.values.end()),
                                    *std::max_element(u.values.begin(), u.values.end())}}};
  s.json_file("comparison.json", report);
  return report;
}

}  // namespace

json error_json(std::string_view type, std::string_view message, std::optional<std::uint64_t> trial) {
  json e{{"type", type}, {"message", message}};
  if (trial) e["trial"] = *trial;
  return {{"schema_version", kSchemaVersion}, {"error", e}};
}

int run_subcommand(std::string_view subcommand, const ExperimentConfig& config, std::ostream& out,
                   std::ostream& log) {
  std::optional<RunManifest> manifest;
  auto fail = [&](int code, const json& err) {
    if (manifest) {
      try {
        manifest->finalize("error");
      } catch (const std::exception&) {
        // the original error is the one worth reporting
      }
    }
    out << err.dump() << '\n';
    return code;
  };
  try {
    manifest.emplace(config.run.out, std::string(subcommand), config.to_json(), config.run.seed);
    Session session(subcommand, config, *manifest);
    json result;
    int code = kExitOk;
    if (subcommand == "simulate") {
      result = simulate(session, log);
    } else if (subcommand == "hierarchy") {
      result = hierarchy_cmd(session, log);
    } else if (subcommand == "chaos-check") {
      bool pass = false;
      result = chaos_check(session, pass);
      code = pass ? kExitOk : kExitChecksFailed;
    } else if (subcommand == "pde") {
      result = pde_cmd(session, log);
    } else if (subcommand == "validate") {
      const ValidationReport report = run_full_validation(config, *manifest, log);
      result = report.to_json();
      session.json_file("report.json", result);
      code = report.passed() ? kExitOk : kExitChecksFailed;
    } else {
      throw ConfigError("unknown subcommand '" + std::string(subcommand) + "'");
    }
    manifest->finalize(code == kExitOk ? "ok" : "checks_failed");
    out << json{{"schema_version", kSchemaVersion},
                {"subcommand", subcommand},
                {"status", code == kExitOk ? "ok" : "checks_failed"},
                {"out", config.run.out},
                {"result", result}}
               .dump()
        << '\n';
    return code;
  } catch (const ConfigError& e) {
    return fail(kExitConfig, error_json("config", e.what()));
  } catch (const ResourceError& e) {
    return fail(kExitResource, error_json("resource", e.what(), e.trial()));
  } catch (const std::exception& e) {
    return fail(kExitRuntime, error_json("runtime", e.what()));
  }
}

}  // namespace bbm::app
