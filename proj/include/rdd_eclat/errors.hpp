#pragma once

#include <stdexcept>
#include <string>

namespace rdd_eclat {

/// Invalid user-supplied configuration (bad flag, out-of-range parameter).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unreadable or malformed dataset.
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure inside a mining pipeline (recursion cap, oracle guard, caller bug).
class MiningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rdd_eclat
