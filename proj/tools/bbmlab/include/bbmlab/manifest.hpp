#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace bbm::app {

inline constexpr int kSchemaVersion = 1;

// Hex SHA-256 of a file's contents.
std::string sha256_file(const std::filesystem::path& path);

// Version string baked in at build time (git describe).
std::string version_string();

// manifest.json in the output directory: written with status "running" when
// the run starts and rewritten with end time, status and output digests when
// it finishes.
class RunManifest {
 public:
  RunManifest(std::filesystem::path dir, std::string subcommand, nlohmann::json config,
              std::uint64_t seed);

  const std::filesystem::path& directory() const noexcept { return dir_; }
  std::filesystem::path path() const { return dir_ / "manifest.json"; }

  // Registers a file (relative to the directory) for digesting at finalize().
  void add_output(const std::filesystem::path& file);
  const std::vector<std::filesystem::path>& outputs() const noexcept { return outputs_; }

  void finalize(const std::string& status);

  nlohmann::json to_json() const;

 private:
  void write() const;

  std::filesystem::path dir_;
  std::string subcommand_;
  nlohmann::json config_;
  std::uint64_t seed_;
  std::string start_;
  std::chrono::steady_clock::time_point start_clock_;
  std::string end_;
  double wall_seconds_ = 0.0;
  std::string status_ = "running";
  std::vector<std::filesystem::path> outputs_;
  nlohmann::json digests_ = nlohmann::json::array();
};

}  // namespace bbm::app
