#pragma once

#include <filesystem>
#include <string_view>

#include "kerrpair/sweep.hpp"

namespace kerrpair {

// Parsed artifact configuration; sweep.fixed and sweep.space repeat params
// and space for direct use with run_sweep.
struct Config {
  ModelParams params;
  HilbertSpec space;
  SweepSpec sweep;
};

// key = value lines under [model], [hilbert], [sweep] and up to two [axis]
// sections; '#' starts a comment; unknown sections and keys are rejected by
// name. Omitted keys keep the weak-drive defaults.
Config parse_config(std::string_view text);
Config load_config(const std::filesystem::path& path);

}  // namespace kerrpair
