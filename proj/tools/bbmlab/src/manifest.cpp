#include "bbmlab/manifest.hpp"

#include <array>
#include <fstream>
#include <memory>
#include <stdexcept>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <openssl/evp.h>

#ifndef BBMLAB_VERSION
#define BBMLAB_VERSION "unknown"
#endif

namespace bbm::app {
namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()) % 1000;
  return fmt::format("{:%Y-%m-%dT%H:%M:%S}.{:03d}Z", fmt::gmtime(std::chrono::system_clock::to_time_t(now)),
                     static_cast<int>(ms.count()));
}

}  // namespace

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256: digest init failed");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0 && EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount())) != 1)
      throw std::runtime_error("sha256: digest update failed");
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1) throw std::runtime_error("sha256: digest final failed");
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

std::string version_string() { return BBMLAB_VERSION; }

RunManifest::RunManifest(std::filesystem::path dir, std::string subcommand, nlohmann::json config,
                         std::uint64_t seed)
    : dir_(std::move(dir)),
      subcommand_(std::move(subcommand)),
      config_(std::move(config)),
      seed_(seed),
      start_(utc_now()),
      start_clock_(std::chrono::steady_clock::now()) {
  std::filesystem::create_directories(dir_);
  write();
}

void RunManifest::add_output(const std::filesystem::path& file) { outputs_.push_back(file); }

void RunManifest::finalize(const std::string& status) {
  status_ = status;
  end_ = utc_now();
  wall_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_clock_).count();
  digests_ = nlohmann::json::array();
  for (const auto& f : outputs_) {
    const auto full = dir_ / f;
    digests_.push_back({{"path", f.generic_string()},
                        {"sha256", std::filesystem::exists(full) ? sha256_file(full) : ""},
                        {"bytes", std::filesystem::exists(full) ? std::filesystem::file_size(full) : 0}});
  }
  write();
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j{{"schema_version", kSchemaVersion},
                   {"subcommand", subcommand_},
                   {"version", version_string()},
                   {"seed", seed_},
                   {"config", config_},
                   {"start_utc", start_},
                   {"status", status_},
                   {"outputs", digests_}};
  if (!end_.empty()) {
    j["end_utc"] = end_;
    j["wall_seconds"] = wall_seconds_;
  }
  return j;
}

void RunManifest::write() const {
  const auto tmp = path().string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << to_json().dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path());
}

}  // namespace bbm::app
