#pragma once

#include <stdexcept>
#include <string>

namespace kerrpair {

// Bad user input: malformed config, unknown key, out-of-range parameter.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: singular steady-state solve, invariant violation, ...
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Requested correlation has no value (mean photon number below threshold,
// or the truncation is too small to hold a two-photon event).
struct UndefinedCorrelation : std::runtime_error {
  explicit UndefinedCorrelation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kerrpair
