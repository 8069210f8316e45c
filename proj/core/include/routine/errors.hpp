#pragma once

#include <stdexcept>
#include <string>

namespace routine {

// Bad config file, missing mapping entry, malformed CSV header, and the like.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Requested analysis range is too short for the configured windows.
class RangeError : public std::runtime_error {
 public:
  explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

// Not enough step dates (or degenerate strata) for calibration/standardization.
class CalibrationError : public std::runtime_error {
 public:
  explicit CalibrationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace routine
