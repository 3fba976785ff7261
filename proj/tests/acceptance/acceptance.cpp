// Runs the full validation with default settings and prints one line per
// criterion. Exit status is nonzero if any criterion fails.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "bbmlab/config.hpp"
#include "bbmlab/manifest.hpp"
#include "bbmlab/validation.hpp"

int main(int argc, char** argv) {
  using namespace bbm::app;
  namespace fs = std::filesystem;

  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "bbmlab_acceptance";
  fs::remove_all(dir);

  ExperimentConfig config;
  config.run.out = dir.string();
  config.run.threads = 4;
  config.check();

  RunManifest manifest(dir, "validate", config.to_json(), config.run.seed);
  std::ofstream log(dir / "validate.log");
  const ValidationReport report = run_full_validation(config, manifest, log);
  std::ofstream(dir / "report.json") << report.to_json().dump(2) << '\n';
  manifest.add_output("report.json");
  manifest.finalize(report.passed() ? "ok" : "checks_failed");

  for (int k = 1; k <= kCriteria; ++k)
    std::printf("criterion %d: %s  %s\n", k, report.criterion_passed(k) ? "PASS" : "FAIL", criterion_title(k));
  for (const Check& c : report.checks)
    if (!c.pass)
      std::printf("  failed [C%d] %s = %.6g (%s %.6g)\n", c.criterion, c.name.c_str(), c.value, c.relation.c_str(),
                  c.tolerance);
  std::printf("%s\n", report.passed() ? "ALL PASS" : "SOME CRITERIA FAILED");
  return report.passed() ? 0 : 1;
}
