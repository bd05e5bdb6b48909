#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kerrpair/analytic.hpp"
#include "kerrpair/bell.hpp"
#include "kerrpair/correlations.hpp"

namespace kerrpair {

enum class Engine { MasterEquation, Analytic, Both };

std::string engine_name(Engine e);
Engine engine_from_name(const std::string& name);

struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  bool log_spacing = false;

  std::vector<double> values() const;
  void validate() const;
};

// Parameter names accepted for axes and config keys. The plain aliases fan
// out to both modes (theta to theta1 only, so theta stays the relative
// drive phase while theta2 is held).
bool is_model_param(const std::string& name);
void set_model_param(ModelParams& p, const std::string& name, double value);

// column names run_sweep can fill, already alphabetized
const std::vector<std::string>& known_outputs();

struct SweepSpec {
  std::vector<SweepAxis> axes;  // up to 2
  ModelParams fixed;
  HilbertSpec space = HilbertSpec::two_mode();
  std::vector<std::string> outputs = known_outputs();
  Engine engine = Engine::Both;
  int workers = 0;  // 0 = hardware concurrency

  void validate() const;
};

// One grid point under one engine. Undefined quantities stay empty and
// surface as the NA sentinel; a solver failure flips valid and fills note,
// it never aborts the sweep.
struct ResultRow {
  std::vector<double> axis_values;
  std::vector<std::optional<double>> outputs;  // parallel to output_names
  std::string engine;
  bool valid = true;
  std::string note;

  bool operator==(const ResultRow&) const = default;
};

struct SweepResult {
  std::vector<std::string> axis_names;
  std::vector<std::string> output_names;
  std::vector<ResultRow> rows;

  bool operator==(const SweepResult&) const = default;
};

// Row-major over the axes (first axis slowest); with engine Both each grid
// point emits a master-equation row then an analytic row.
SweepResult run_sweep(const SweepSpec& spec);

struct PresetOptions {
  bool me_spot_check = false;  // 5x5 master-equation subgrid rows on fig4/fig5
  int workers = 0;
};

const std::vector<std::string>& preset_names();
SweepResult figure_preset(const std::string& name, const PresetOptions& opts = {});

// CSV: one header row, axes first, outputs alphabetically, then engine,
// valid, note; doubles at 17 significant digits; empty optionals as NA.
void write_csv(const SweepResult& result, const std::filesystem::path& path);
SweepResult read_csv(const std::filesystem::path& path);

// JSON mirror with identical field names
void write_json(const SweepResult& result, const std::filesystem::path& path);
std::string to_json_string(const SweepResult& result);

}  // namespace kerrpair
