#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bbm/errors.hpp"
#include "bbmlab/commands.hpp"
#include "bbmlab/config.hpp"
#include "bbmlab/manifest.hpp"

namespace {

struct Options {
  std::optional<std::string> config;
  bbm::app::Overrides overrides;
};

void add_common(CLI::App& sub, Options& o) {
  sub.add_option("--config", o.config, "JSON experiment config");
  sub.add_option("--t", o.overrides.t, "final time");
  sub.add_option("--trials", o.overrides.trials, "Monte Carlo trials");
  sub.add_option("--seed", o.overrides.seed, "base seed");
  sub.add_option("--grid-lo", o.overrides.grid_lo, "spatial grid lower end");
  sub.add_option("--grid-hi", o.overrides.grid_hi, "spatial grid upper end");
  sub.add_option("--grid-n", o.overrides.grid_n, "spatial grid points");
  sub.add_option("--order", o.overrides.order, "kernel order n / truncation order");
  sub.add_option("--out", o.overrides.out, "output directory (default $BBMLAB_OUT or ./bbmlab_out)");
  sub.add_option("--threads", o.overrides.threads, "worker threads (0 = hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace bbm::app;
  CLI::App app{"Branching Brownian motion laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  Options opts;
  const char* help[] = {"bbm_sim estimators to CSV", "g_n slices, mass table and CDME residuals",
                        "Wick/Malliavin identity suite", "FKPP and linear reaction-diffusion solvers",
                        "full cross-validation matrix"};
  for (std::size_t i = 0; i < kSubcommands.size(); ++i)
    add_common(*app.add_subcommand(std::string(kSubcommands[i]), help[i]), opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_json("usage", e.what()).dump() << '\n';
    return kExitConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  ExperimentConfig config;
  try {
    std::optional<std::filesystem::path> file;
    if (opts.config) file = *opts.config;
    config = resolve_config(file, opts.overrides);
  } catch (const bbm::ConfigError& e) {
    std::cout << error_json("config", e.what()).dump() << '\n';
    return kExitConfig;
  }
  return run_subcommand(name, config, std::cout, std::cerr);
}
