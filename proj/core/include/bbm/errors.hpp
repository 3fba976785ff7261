#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bbm {

// Axis lengths or grids of two operands disagree.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A tensor order exceeds what the caller configured as storable.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Invalid run configuration (rejected before any work starts).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A simulation trial exceeded its resource budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t trial)
      : std::runtime_error(what), trial_(trial) {}

  std::uint64_t trial() const noexcept { return trial_; }

 private:
  std::uint64_t trial_;
};

// A numerical scheme left the region where its output is meaningful.
class SchemeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bbm
