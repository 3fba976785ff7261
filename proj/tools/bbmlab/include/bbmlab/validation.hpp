#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bbmlab/config.hpp"
#include "bbmlab/manifest.hpp"

namespace bbm::app {

struct Check {
  int criterion = 0;
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  std::string relation;  // "<=" or ">="
  bool pass = false;
};

struct ValidationReport {
  std::vector<Check> checks;
  std::vector<std::filesystem::path> files;  // CSV outputs, relative to the run directory

  bool passed() const;
  // True when every check of the criterion passed (and there is at least one).
  bool criterion_passed(int criterion) const;
  nlohmann::json to_json() const;
};

inline constexpr int kCriteria = 9;
const char* criterion_title(int criterion);

// Criteria 1 to 8. Every number behind a check is written to a CSV file in
// `dir`, each registered with the manifest when one is given. Progress goes
// to `log`.
ValidationReport run_validation(const ExperimentConfig& config, const std::filesystem::path& dir,
                                RunManifest* manifest, std::ostream& log);

// Criterion 9: line-by-line comparison of the data sections of `files` in
// two directories.
Check compare_data_sections(const std::filesystem::path& a, const std::filesystem::path& b,
                            const std::vector<std::filesystem::path>& files);

// run_validation, then (if enabled) a second pass with a different thread
// count in dir/repeat, compared by compare_data_sections.
ValidationReport run_full_validation(const ExperimentConfig& config, RunManifest& manifest,
                                     std::ostream& log);

}  // namespace bbm::app
