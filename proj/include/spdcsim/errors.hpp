#pragma once

#include <stdexcept>
#include <string>

namespace spdcsim {

/// Invalid configuration or arguments: bad config file, out-of-range knobs,
/// malformed scan requests.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal numerical consistency failure (|C| above 1, too many bootstrap
/// failures, sweep/coherence disagreement).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// An emission angle fell outside the physical extent of the phase mask.
class MaskExtentError : public std::runtime_error {
 public:
  explicit MaskExtentError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spdcsim
