#include "bbmlab/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "bbm/chaos/identities.hpp"
#include "bbm/chaos/phi.hpp"
#include "bbm/hierarchy/kernels.hpp"
#include "bbm/hierarchy/mass.hpp"
#include "bbm/hierarchy/residuals.hpp"
#include "bbm/hierarchy/semianalytic.hpp"
#include "bbm/numerics/convergence.hpp"
#include "bbm/numerics/heat_kernel.hpp"
#include "bbm/numerics/tensor_ops.hpp"
#include "bbm/pde/fkpp.hpp"
#include "bbm/pde/linear_rd.hpp"
#include "bbm/sim/estimators.hpp"
#include "bbm/sim/statistics.hpp"
#include "bbm/sim/trial_runner.hpp"
#include "bbmlab/csv.hpp"

namespace bbm::app {
namespace {

namespace fs = std::filesystem;
using numerics::Grid1D;
using numerics::SampledKernel;

std::string label(double v) { return fmt::format("{:g}", v); }

class Recorder {
 public:
  Recorder(const ExperimentConfig& cfg, fs::path dir, RunManifest* manifest, std::ostream& log)
      : cfg_(cfg), dir_(std::move(dir)), manifest_(manifest), log_(log) {
    fs::create_directories(dir_);
  }

  CsvWriter csv(const std::string& file, const std::vector<std::string>& columns) {
    const MetaLines meta{{"subcommand", "validate"},
                         {"version", version_string()},
                         {"seed", std::to_string(cfg_.run.seed)},
                         {"t", format_number(cfg_.run.t)},
                         {"trials", std::to_string(cfg_.run.trials)},
                         {"threads", std::to_string(sim::resolve_threads(cfg_.run.threads))}};
    files_.emplace_back(file);
    if (manifest_ != nullptr) manifest_->add_output(file);
    return CsvWriter(dir_ / file, meta, columns);
  }

  void check(int criterion, std::string name, double value, double tolerance, const char* relation) {
    const bool ok = std::isfinite(value) &&
                    (std::string_view(relation) == ">=" ? value >= tolerance : value <= tolerance);
    log_ << fmt::format("  [C{}] {:<32} {:>12.5g} {} {:<10.4g} {}\n", criterion, name, value, relation,
                        tolerance, ok ? "ok" : "FAIL");
    report_.checks.push_back({criterion, std::move(name), value, tolerance, relation, ok});
  }

  void section(int criterion) { log_ << fmt::format("C{}: {}\n", criterion, criterion_title(criterion)); }

  ValidationReport finish() {
    CsvWriter out = csv("checks.csv", {"criterion", "name", "value", "tolerance", "relation", "pass"});
    for (const Check& c : report_.checks)
      out.row(std::vector<std::string>{std::to_string(c.criterion), c.name, format_number(c.value),
                                       format_number(c.tolerance), c.relation, c.pass ? "1" : "0"});
    report_.files = files_;
    return report_;
  }

 private:
  const ExperimentConfig& cfg_;
  fs::path dir_;
  RunManifest* manifest_;
  std::ostream& log_;
  std::vector<fs::path> files_;
  ValidationReport report_;
};

sim::SimConfig sim_at(const ExperimentConfig& cfg, double t, std::uint64_t trials) {
  sim::SimConfig sc = cfg.sim_config();
  sc.t_final = t;
  sc.trials = trials;
  return sc;
}

double relative(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

// Same spacing as the pde section asks for, on [lo, hi].
Grid1D pde_grid(const PdeSection& p) {
  const auto cells = static_cast<std::size_t>(std::max(1.0, std::round((p.hi - p.lo) / p.spacing)));
  return {p.lo, p.hi, cells + 1};
}

void count_law(const ExperimentConfig& cfg, Recorder& r) {
  r.section(1);
  const ValidateSection& v = cfg.validate;
  constexpr std::size_t kMaxN = 10;
  {
    CsvWriter out = r.csv("c1_mass.csv", {"t", "n", "recursion", "geometric", "abs_error"});
    for (double t : v.count_times) {
      const auto m = hierarchy::mass_recursion(kMaxN, t, cfg.hierarchy.mass_substeps);
      double worst = 0.0;
      for (std::size_t n = 1; n <= kMaxN; ++n) {
        const double exact = hierarchy::geometric_mass(n, t);
        worst = std::max(worst, std::abs(m(n) - exact));
        out.row({t, static_cast<double>(n), m(n), exact, std::abs(m(n) - exact)});
      }
      r.check(1, "mass_recursion_t" + label(t), worst, v.mass_tolerance, "<=");
    }
  }
  CsvWriter counts = r.csv("c1_counts.csv", {"t", "n", "observed", "probability", "standard_error", "geometric"});
  CsvWriter chi = r.csv("c1_chi_square.csv", {"t", "statistic", "degrees_of_freedom", "p_value"});
  for (double t : v.count_times) {
    const sim::CountPmf pmf = sim::estimate_count_pmf(sim_at(cfg, t, cfg.run.trials));
    for (const auto& [n, c] : pmf.counts)
      counts.row({t, static_cast<double>(n), static_cast<double>(c), pmf.probability(n), pmf.standard_error(n),
                  hierarchy::geometric_mass(n, t)});
    const sim::ChiSquareResult test = sim::geometric_count_test(pmf, t, v.count_cells);
    chi.row({t, test.statistic, static_cast<double>(test.degrees_of_freedom), test.p_value});
    r.check(1, "count_chi_square_p_t" + label(t), test.p_value, v.chi2_level, ">=");
  }
}

void normalization(const ExperimentConfig& cfg, Recorder& r) {
  r.section(2);
  const auto m = hierarchy::mass_recursion(cfg.hierarchy.mass_terms, cfg.run.t, cfg.hierarchy.mass_substeps);
  CsvWriter out = r.csv("c2_normalization.csv", {"n", "mass", "cumulative"});
  double sum = 0.0;
  for (std::size_t n = 1; n <= m.size(); ++n) {
    sum += m(n);
    out.row({static_cast<double>(n), m(n), sum});
  }
  r.check(2, "mass_total_minus_one", std::abs(m.total() - 1.0), cfg.validate.normalization_tolerance, "<=");
}

void kernel_identity(const ExperimentConfig& cfg, Recorder& r) {
  r.section(3);
  const ValidateSection& v = cfg.validate;
  const double t = cfg.run.t;
  const auto q = cfg.quadrature();
  const Grid1D grid = cfg.spatial_grid();

  {
    CsvWriter out = r.csv("c3_invariance.csv", {"n", "y1", "y2", "rho_x0", "rho_xalt", "rel_difference"});
    double worst1 = 0.0;
    double worst2 = 0.0;
    for (double y : v.rho2_diagonal) {
      const double ys[1] = {y};
      const double a = hierarchy::rho_from_g(1, t, 0.0, ys, q);
      const double b = hierarchy::rho_from_g(1, t, v.x_ref_alt, ys, q);
      worst1 = std::max(worst1, relative(a, b));
      out.row({1.0, y, 0.0, a, b, relative(a, b)});
    }
    for (double y : v.rho2_diagonal) {
      if (std::abs(y) > 1.0) continue;
      for (double y2 : {y, 0.3 - 0.5 * y}) {
        const double ys[2] = {y, y2};
        const double a = hierarchy::rho_from_g(2, t, 0.0, ys, q);
        const double b = hierarchy::rho_from_g(2, t, v.x_ref_alt, ys, q);
        worst2 = std::max(worst2, relative(a, b));
        out.row({2.0, y, y2, a, b, relative(a, b)});
      }
    }
    r.check(3, "x_ref_invariance_n1", worst1, v.invariance_tolerance_n1, "<=");
    r.check(3, "x_ref_invariance_n2", worst2, v.invariance_tolerance_n2, "<=");
  }

  const sim::SimConfig sc = sim_at(cfg, t, cfg.run.trials);
  {
    const sim::Histogram h1 = sim::estimate_density(1, sc, grid);
    const SampledKernel mc = h1.density();
    const SampledKernel se = h1.standard_error();
    const SampledKernel k1 = hierarchy::rho_kernel(1, t, grid, q);
    CsvWriter out = r.csv("c3_rho1.csv", {"y", "monte_carlo", "standard_error", "kernel"});
    double l1 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      l1 += std::abs(mc[i] - k1[i]) * grid.spacing();
      out.row({grid.point(i), mc[i], se[i], k1[i]});
    }
    r.check(3, "rho1_histogram_l1", l1, v.rho1_l1, "<=");
  }
  {
    const sim::Histogram h2 = sim::estimate_density(2, sc, grid);
    const SampledKernel mc = h2.density();
    const SampledKernel se = h2.standard_error();
    const SampledKernel k2 = hierarchy::rho_kernel(2, t, grid, q);
    CsvWriter out = r.csv("c3_rho2_diagonal.csv", {"y", "monte_carlo", "standard_error", "kernel", "allowed"});
    double worst = 0.0;
    for (double y : v.rho2_diagonal) {
      const std::size_t i = grid.nearest(y);
      const std::size_t idx[2] = {i, i};
      const double kern = k2.at(idx);
      const double allowed = std::max(v.rho2_relative * kern, 3.0 * se.at(idx));
      worst = std::max(worst, std::abs(mc.at(idx) - kern) / allowed);
      out.row({grid.point(i), mc.at(idx), se.at(idx), kern, allowed});
    }
    r.check(3, "rho2_diagonal_error_over_allowed", worst, 1.0, "<=");
  }
  {
    std::mt19937_64 rng(cfg.run.seed);
    std::uniform_real_distribution<double> ut(0.5, 2.0);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    std::uniform_real_distribution<double> uy(-2.0, 2.0);
    CsvWriter out = r.csv("c3_semianalytic.csv", {"t", "x", "y1", "y2", "quadrature", "semianalytic", "rel_error"});
    double worst = 0.0;
    for (int i = 0; i < v.semianalytic_points; ++i) {
      const double tt = ut(rng);
      const double x = ux(rng);
      const double ys[2] = {uy(rng), uy(rng)};
      const double a = hierarchy::eval_gn(2, tt, x, ys, q);
      const double b = hierarchy::g2_semianalytic(tt, x, ys[0], ys[1]);
      worst = std::max(worst, std::abs(a - b) / b);
      out.row({tt, x, ys[0], ys[1], a, b, std::abs(a - b) / b});
    }
    r.check(3, "g2_vs_semianalytic", worst, v.semianalytic_relative, "<=");
  }
}

void write_study(CsvWriter& out, const std::string& name, const hierarchy::RefinementStudy& s) {
  for (std::size_t i = 0; i < s.spacings.size(); ++i)
    out.row(std::vector<std::string>{name, format_number(s.spacings[i]), format_number(s.errors[i])});
}

void cdme_residuals(const ExperimentConfig& cfg, Recorder& r) {
  r.section(4);
  const ValidateSection& v = cfg.validate;
  const HierarchySection& h = cfg.hierarchy;
  const double t = cfg.run.t;
  const auto q = cfg.quadrature();

  const Grid1D fine = Grid1D::symmetric(h.residual_half_width, v.residual_n1_spacing);
  const double n1 = hierarchy::cdme_residual(1, t, fine, v.residual_n1_dt, q).max_interior;
  r.check(4, "cdme_n1_residual_h" + label(v.residual_n1_spacing), n1, v.residual_n1_tolerance, "<=");

  CsvWriter out = r.csv("c4_refinement.csv", {"study", "h", "max_residual"});
  for (int n : {1, 2}) {
    const auto s = hierarchy::cdme_refinement(n, t, h.residual_half_width, h.residual_spacings,
                                              h.residual_dt_per_h, q);
    write_study(out, fmt::format("cdme_n{}", n), s);
    r.check(4, fmt::format("cdme_n{}_slope", n), s.slope, v.min_slope, ">=");
  }
  const std::vector<std::vector<double>> ys{{0.3}, {0.3, -0.4}};
  for (const auto& y : ys) {
    const auto s = hierarchy::system_pde_refinement(t, y, h.residual_half_width, h.residual_spacings,
                                                    h.residual_dt_per_h, q);
    write_study(out, fmt::format("system_pde_n{}", y.size()), s);
    r.check(4, fmt::format("system_pde_n{}_slope", y.size()), s.slope, v.min_slope, ">=");
  }
}

void mckean_duality(const ExperimentConfig& cfg, Recorder& r) {
  r.section(5);
  const ValidateSection& v = cfg.validate;
  const double amp = cfg.simulate.mckean_amplitude;
  const numerics::Field1D f0 = numerics::Field1D::from_function(
      pde_grid(cfg.pde), [amp](double x) { return amp * std::exp(-x * x); });
  CsvWriter out = r.csv("c5_mckean.csv", {"t", "x", "monte_carlo", "standard_error", "fkpp", "allowed"});
  for (double t : v.mckean_times) {
    const numerics::Field1D u = pde::solve_fkpp(f0, t, cfg.pde.dt);
    const auto mc = sim::estimate_mckean(f0, cfg.simulate.mckean_x, sim_at(cfg, t, v.mckean_trials));
    double worst = 0.0;
    for (const sim::McKeanPoint& p : mc) {
      const double fd = u.interpolate(p.x);
      const double allowed = std::max(v.mckean_floor, 3.0 * p.standard_error);
      worst = std::max(worst, std::abs(p.estimate - fd) / allowed);
      out.row({t, p.x, p.estimate, p.standard_error, fd, allowed});
    }
    r.check(5, "mckean_error_over_allowed_t" + label(t), worst, 1.0, "<=");
  }
}

void concentration(const ExperimentConfig& cfg, Recorder& r) {
  r.section(6);
  const ValidateSection& v = cfg.validate;
  const double t = cfg.run.t;
  const Grid1D grid = cfg.spatial_grid();
  const sim::SimConfig sc = sim_at(cfg, t, cfg.run.trials);
  {
    const sim::ConcentrationEstimate est = sim::estimate_concentration(sc, grid);
    const numerics::Field1D exact = pde::concentration_closed_form(t, grid);
    CsvWriter out = r.csv("c6_concentration.csv", {"x", "monte_carlo", "standard_error", "closed_form"});
    double l1 = 0.0;
    double integral = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      l1 += std::abs(est.field.values[i] - exact.values[i]) * grid.spacing();
      integral += est.field.values[i] * grid.spacing();
      out.row({grid.point(i), est.field.values[i], est.standard_error[i], exact.values[i]});
    }
    r.check(6, "concentration_l1", l1, v.concentration_l1, "<=");
    r.check(6, "field_integral_minus_e_t", std::abs(integral - std::exp(t)), 3.0 * est.mean_count_standard_error,
            "<=");
  }
  {
    const sim::BallOccupancy ball = sim::estimate_ball_occupancy(cfg.simulate.ball_x, cfg.simulate.ball_epsilon, sc);
    const double eps = cfg.simulate.ball_epsilon;
    const double estimate = ball.mean_inside() / (2.0 * eps);
    const double se = ball.mean_inside_standard_error() / (2.0 * eps);
    const double exact = pde::concentration_closed_form(t, cfg.simulate.ball_x);
    // 3 sigma plus a bound on the O(eps^2) smoothing bias.
    const double allowed = 3.0 * se + eps * eps * exact;
    CsvWriter out = r.csv("c6_ball.csv", {"x", "epsilon", "estimate", "standard_error", "closed_form", "allowed"});
    out.row({cfg.simulate.ball_x, eps, estimate, se, exact, allowed});
    r.check(6, "ball_occupancy_limit", std::abs(estimate - exact), allowed, "<=");
  }
  {
    CsvWriter out = r.csv("c6_closed_form_residual.csv", {"h", "dt", "max_residual"});
    std::vector<double> hs;
    std::vector<double> es;
    for (double h : cfg.hierarchy.residual_spacings) {
      const Grid1D g = Grid1D::symmetric(cfg.hierarchy.residual_half_width, h);
      const double dt = cfg.hierarchy.residual_dt_per_h * g.spacing();
      hs.push_back(g.spacing());
      es.push_back(pde::closed_form_residual(t, g, dt));
      out.row({hs.back(), dt, es.back()});
    }
    r.check(6, "closed_form_residual_slope", numerics::convergence_slope(hs, es), v.min_slope, ">=");
  }
  {
    const Grid1D g = pde_grid(cfg.pde);
    const double eps = cfg.pde.mollification;
    const numerics::Field1D fd = pde::solve_linear_rd(g, t, cfg.pde.dt, eps);
    const numerics::Field1D exact = numerics::Field1D::from_function(
        g, [&](double x) { return std::exp(t) * numerics::heat_kernel(t + eps * eps, x); }, t);
    const pde::FieldComparison cmp = pde::compare_fields(fd, exact);
    CsvWriter out = r.csv("c6_linear_rd.csv", {"l1", "linf", "relative_l2"});
    out.row({cmp.l1, cmp.linf, cmp.relative_l2});
    r.check(6, "linear_rd_relative_l2", cmp.relative_l2, v.closed_form_relative, "<=");
  }
}

void chaos_identities(const ExperimentConfig& cfg, Recorder& r) {
  r.section(7);
  chaos::IdentitySuiteConfig sc;
  sc.seed = cfg.chaos.seed;
  sc.random_cases = cfg.chaos.random_cases;
  sc.exact_tolerance = cfg.chaos.exact_tolerance;
  sc.min_slope = cfg.chaos.min_slope;
  sc.vacuum_tolerance = cfg.chaos.vacuum_tolerance;
  CsvWriter out = r.csv("c7_identities.csv", {"name", "kind", "max_error", "tolerance", "slope", "pass"});
  CsvWriter ladder = r.csv("c7_refinement.csv", {"name", "h", "error"});
  for (const chaos::IdentityCheck& c : chaos::run_identity_suite(sc)) {
    out.row(std::vector<std::string>{c.name, c.kind, format_number(c.max_error), format_number(c.tolerance),
                                     format_number(c.slope), c.pass ? "1" : "0"});
    for (std::size_t i = 0; i < c.spacings.size(); ++i)
      ladder.row(std::vector<std::string>{c.name, format_number(c.spacings[i]), format_number(c.errors[i])});
    if (c.kind == "fd" && !c.spacings.empty()) {
      // Passes on slope, or when the stencils satisfy the identity exactly.
      const bool exact = c.errors.back() <= sc.fd_floor;
      if (exact)
        r.check(7, c.name + "_finest_error", c.errors.back(), sc.fd_floor, "<=");
      else
        r.check(7, c.name + "_slope", c.slope, sc.min_slope, ">=");
    } else {
      r.check(7, c.name, c.max_error, c.tolerance, "<=");
    }
  }
}

void abstract_equation(const ExperimentConfig& cfg, Recorder& r) {
  r.section(8);
  const ValidateSection& v = cfg.validate;
  const HierarchySection& h = cfg.hierarchy;
  const double t = cfg.run.t;
  const auto q = cfg.quadrature();
  {
    CsvWriter out = r.csv("c8_phi_residual.csv", {"h", "dt", "order1", "order2", "wick_birth_difference"});
    std::vector<double> hs;
    std::vector<double> e1;
    std::vector<double> e2;
    double birth = 0.0;
    for (double sp : h.residual_spacings) {
      const Grid1D g = Grid1D::symmetric(h.residual_half_width, sp);
      const double dt = h.residual_dt_per_h * g.spacing();
      const auto before = chaos::phi_from_hierarchy(t - dt, 2, g, q);
      const auto now = chaos::phi_from_hierarchy(t, 2, g, q);
      const auto after = chaos::phi_from_hierarchy(t + dt, 2, g, q);
      const chaos::PhiResidual res = chaos::phi_equation_residual(before, now, after, dt);
      const double diff = numerics::max_abs_difference(
          res.wick_square_top, numerics::sym_tensor_product(now.kernel(1), now.kernel(1)));
      birth = std::max(birth, diff);
      hs.push_back(g.spacing());
      e1.push_back(res.max_interior[1]);
      e2.push_back(res.max_interior[2]);
      out.row({g.spacing(), dt, e1.back(), e2.back(), diff});
    }
    r.check(8, "phi_order1_slope", numerics::convergence_slope(hs, e1), v.min_slope, ">=");
    r.check(8, "phi_order2_slope", numerics::convergence_slope(hs, e2), v.min_slope, ">=");
    r.check(8, "wick_square_vs_birth_term", birth, 1e-12, "<=");
  }
  {
    const double tm = v.malliavin_t;
    const Grid1D g = Grid1D::symmetric(v.malliavin_half_width, v.malliavin_spacing);
    const auto phi = chaos::phi_from_hierarchy(tm, 2, g, q);
    CsvWriter out = r.csv("c8_malliavin.csv", {"t", "x", "malliavin", "direct", "tail", "corrected", "closed_form"});
    double agree = 0.0;
    double worst = 0.0;
    for (double x : {0.0, 0.5, 1.0}) {
      const double xn = g.point(g.nearest(x));
      const chaos::ConcentrationResult c = chaos::concentration_via_malliavin(phi, tm, xn);
      const double direct = chaos::concentration_direct(phi, xn);
      const double exact = pde::concentration_closed_form(tm, xn);
      agree = std::max(agree, std::abs(c.truncated - direct));
      worst = std::max(worst, std::abs(c.corrected - exact) / exact);
      out.row({tm, xn, c.truncated, direct, c.tail, c.corrected, exact});
    }
    r.check(8, "malliavin_vs_direct_sum", agree, v.malliavin_tolerance, "<=");
    r.check(8, "tail_corrected_vs_closed_form", worst, v.closed_form_relative, "<=");
  }
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

bool ValidationReport::criterion_passed(int criterion) const {
  bool any = false;
  for (const Check& c : checks) {
    if (c.criterion != criterion) continue;
    if (!c.pass) return false;
    any = true;
  }
  return any;
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const Check& c : checks)
    list.push_back({{"criterion", c.criterion},
                    {"name", c.name},
                    {"value", c.value},
                    {"tolerance", c.tolerance},
                    {"relation", c.relation},
                    {"pass", c.pass}});
  nlohmann::json summary = nlohmann::json::object();
  for (int k = 1; k <= kCriteria; ++k) summary[std::to_string(k)] = criterion_passed(k);
  return {{"schema_version", kSchemaVersion}, {"pass", passed()}, {"criteria", summary}, {"checks", list}};
}

const char* criterion_title(int criterion) {
  switch (criterion) {
    case 1: return "count law";
    case 2: return "normalization";
    case 3: return "kernel identity";
    case 4: return "CDME and system PDE residuals";
    case 5: return "McKean duality";
    case 6: return "concentration field";
    case 7: return "chaos identities";
    case 8: return "abstract equation";
    case 9: return "reproducibility";
    default: return "unknown";
  }
}

ValidationReport run_validation(const ExperimentConfig& config, const std::filesystem::path& dir,
                                RunManifest* manifest, std::ostream& log) {
  Recorder r(config, dir, manifest, log);
  count_law(config, r);
  normalization(config, r);
  kernel_identity(config, r);
  cdme_residuals(config, r);
  mckean_duality(config, r);
  concentration(config, r);
  chaos_identities(config, r);
  abstract_equation(config, r);
  return r.finish();
}

Check compare_data_sections(const std::filesystem::path& a, const std::filesystem::path& b,
                            const std::vector<std::filesystem::path>& files) {
  double differing = 0.0;
  for (const auto& f : files)
    if (read_data_section(a / f) != read_data_section(b / f)) differing += 1.0;
  Check c{9, "differing_data_sections", differing, 0.0, "<=", false};
  c.pass = differing == 0.0 && !files.empty();
  return c;
}

ValidationReport run_full_validation(const ExperimentConfig& config, RunManifest& manifest, std::ostream& log) {
  const auto dir = manifest.directory();
  ValidationReport report = run_validation(config, dir, &manifest, log);
  if (!config.validate.reproducibility_check) return report;

  ExperimentConfig again = config;
  again.run.threads = sim::resolve_threads(config.run.threads) == 1 ? 2 : 1;
  log << fmt::format("C9: {} (rerun with {} thread(s))\n", criterion_title(9), again.run.threads);
  std::ostringstream quiet;
  const ValidationReport repeat = run_validation(again, dir / "repeat", nullptr, quiet);
  for (const auto& f : repeat.files) manifest.add_output(fs::path("repeat") / f);

  Check c = compare_data_sections(dir, dir / "repeat", report.files);
  log << fmt::format("  [C9] {:<32} {:>12.5g} {} {:<10.4g} {}\n", c.name, c.value, c.relation, c.tolerance,
                     c.pass ? "ok" : "FAIL");
  report.checks.push_back(std::move(c));
  return report;
}

}  // namespace bbm::app
