#pragma once

#include <stdexcept>
#include <string>

namespace mobco {

// Points or antichains from spaces of different arity.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Ill-formed co-design composition: mismatched spaces or units, cycles,
// dangling ports.
class CompositionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bad scenario, catalog, network or parameter configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The LP could not be assembled from the flow problem.
class BuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input file missing or unreadable (distinct from invalid content).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mobco
